#pragma once

#include <Eigen/Core>

namespace corrlife {

/// Row-major so that each ticker's series is contiguous.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

}  // namespace corrlife
