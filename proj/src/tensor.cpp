#include "pertdef/tensor.hpp"

#include <algorithm>
#include <stdexcept>

namespace pertdef {

Rational tensor_value(const TensorMap& t, const std::vector<int>& key) {
    auto it = t.find(key);
    return it == t.end() ? Rational(0) : it->second;
}

void check_tensor_shape(const TensorMap& t, int rank_lower, int n, const std::string& name) {
    for (const auto& [key, value] : t) {
        if (static_cast<int>(key.size()) != rank_lower + 1)
            throw std::invalid_argument("tensor " + name + ": wrong index count");
        for (int idx : key)
            if (idx < 1 || idx > n)
                throw std::invalid_argument("tensor " + name + ": index out of range");
    }
}

void check_tensor_symmetric(const TensorMap& t, const std::string& name) {
    for (const auto& [key, value] : t) {
        std::vector<int> lower(key.begin() + 1, key.end());
        std::sort(lower.begin(), lower.end());
        do {
            std::vector<int> permuted;
            permuted.push_back(key.front());
            permuted.insert(permuted.end(), lower.begin(), lower.end());
            if (tensor_value(t, permuted) != value)
                throw std::invalid_argument("tensor " + name + " is not symmetric in lower indices");
        } while (std::next_permutation(lower.begin(), lower.end()));
    }
}

} // namespace pertdef
