#ifndef ORLICZ_FAMILY_HPP
#define ORLICZ_FAMILY_HPP

#include <cstdint>

#include "orlicz/grid.hpp"

#include "json.hpp"

namespace orlicz {

/// Random trigonometric polynomials
///   u(x) = sum_{k<=max_k} c_k cos(k pi x) + s_k sin(k pi x)
/// with seeded standard-normal coefficients scaled by k^{-decay}. Smooth,
/// non-constant, sign-changing; the workhorse test family.
struct FamilySpec {
  int max_k = 8;
  double decay = 2.0;
  int count = 10;

  static FamilySpec from_json(const nlohmann::json& j);
  nlohmann::ordered_json to_json() const;
};

/// Deterministic standard normal (Box-Muller over explicit 53-bit
/// uniforms); identical streams on every platform for a fixed seed.
class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}
  double operator()();

 private:
  std::uint64_t next_word();
  double u01();
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

GridFunction sample_function(const Grid& g, const FamilySpec& fam, std::uint64_t seed);

std::vector<GridFunction> sample_family(const Grid& g, const FamilySpec& fam,
                                        std::uint64_t seed);

}  // namespace orlicz

#endif
