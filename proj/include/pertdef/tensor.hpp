#ifndef PERTDEF_TENSOR_HPP
#define PERTDEF_TENSOR_HPP

#include <map>
#include <string>
#include <vector>

#include "pertdef/rational.hpp"

namespace pertdef {

// Sparse coefficient tensor: key = {upper index, lower indices...}, absent
// keys read as zero.
using TensorMap = std::map<std::vector<int>, Rational>;

Rational tensor_value(const TensorMap& t, const std::vector<int>& key);

// All indices 1-based in 1..n, with rank_lower lower indices.
void check_tensor_shape(const TensorMap& t, int rank_lower, int n, const std::string& name);

// Symmetric in the lower indices (every rearrangement carries the same value).
void check_tensor_symmetric(const TensorMap& t, const std::string& name);

} // namespace pertdef

#endif
