#pragma once

// Literal fixture data printed by tools/freeze_oracles.py.

#include "cointkit/dataio.hpp"

#include <Eigen/Dense>

#include <vector>

namespace fixtures {

// clang-format off
const std::vector<double> kX1{0.648, 0.469, -0.643, -1.178, -0.145, 1.203, 1.334, 0.908, 0.347, 1.6, 1.233, -0.22, -1.062, -0.365, -0.42, 0.688, -1.899, -0.191, 1.671, -0.92, -0.758, -0.084, -1.418, -0.13, -0.016, -0.005, -0.989, -0.366, 0.654, -0.715, 0.547, 0.656, -1.427, -0.645, 0.655, 0.493, 0.179, -0.349, 0.109, 1.875};
const std::vector<double> kX2{0.557, 2.159, 0.167, 0.603, 2.296, -0.858, 0.515, -0.221, -0.717, 1.352, 3.48, 1.443, 0.236, -1.902, 2.638, 1.421, -0.263, 2.723, 4.148, -2.263, 2.181, 2.692, 2.161, 4.204, 2.251, -0.807, 8.6, 1.292, 3.964, 4.932, 2.763, -2.596, -2.408, -0.355, 1.068, -1.778, -0.874, 0.11, 0.05, 1.377};
const std::vector<double> kY{1.439, 0.323, -0.092, -0.66, -2.169, 4.093, 2.539, 2.454, -0.045, 3.123, 0.614, 1.085, -0.315, 2.697, 0.837, 0.812, 0.389, -0.903, 1.236, 4.389, -0.573, 0.24, -2.094, -3.529, 0.023, 1.301, -2.579, -2.232, 0.086, -3.638, 1.904, 3.713, 0.696, 1.516, 2.01, 2.474, 3.134, 1.676, 0.987, 2.431};
const std::vector<double> kWalk{0.735, 0.566, -2.342, -4.414, -6.671, -6.49, -5.712, -4.705, -3.122, -2.457, -2.472, -2.199, 0.357, 1.614, 1.312, 0.945, 1.556, 1.792, 1.501, 2.101, 4.583, 7.279, 6.567, 5.402, 6.242, 6.018, 5.913, 6.649, 6.036, 4.13, 2.352, 3.105, 3.865, 4.383, 3.855, 3.379, 1.248, -0.348, -0.431, -1.674, -2.402, -2.683, -1.848, -3.88, -5.449, -5.554, -5.331, -4.838, -5.831, -4.719, -2.784, -1.529, -0.03, 0.195, 0.981, 0.338, 1.356, 3.134, 3.056, 1.698};
// clang-format on

inline Eigen::VectorXd vec(const std::vector<double>& v) {
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

inline std::vector<cointkit::Period> monthly_index(Eigen::Index n, cointkit::Period start = {2000, 1}) {
    std::vector<cointkit::Period> idx;
    for (Eigen::Index t = 0; t < n; ++t) {
        idx.push_back(start);
        start = start.next(cointkit::Frequency::Monthly);
    }
    return idx;
}

inline cointkit::TimeSeries series(const std::string& name, const Eigen::VectorXd& v) {
    return cointkit::TimeSeries(name, cointkit::Frequency::Monthly, monthly_index(v.size()), v);
}

inline cointkit::Dataset pair(const Eigen::VectorXd& y, const Eigen::VectorXd& x) {
    return cointkit::Dataset({series("y", y), series("x", x)},
                             {{"y", cointkit::Role::Dependent}, {"x", cointkit::Role::Regressor}});
}

}  // namespace fixtures
