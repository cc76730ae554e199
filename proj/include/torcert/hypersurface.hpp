#pragma once

#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "numbers.hpp"
#include "polynomial.hpp"

namespace torcert {

// A hypersurface presented by one defining equation, plus enough metadata
// to reproduce how it was assembled (ambient space, named parameters).
template <class F>
struct HypersurfaceSpec {
  Context<F> ctx;
  Polynomial<F> equation;
  std::string ambient;
  std::string source;
  std::vector<std::pair<std::string, Int>> params;
  std::vector<std::string> notes;

  Int param(const std::string& key) const {
    for (const auto& [k, v] : params)
      if (k == key) return v;
    throw OutOfRange("unknown parameter: " + key);
  }
  bool has_param(const std::string& key) const {
    for (const auto& [k, v] : params)
      if (k == key) return true;
    return false;
  }
};

}  // namespace torcert
