#include "orlicz/family.hpp"

#include <cmath>

namespace orlicz {

FamilySpec FamilySpec::from_json(const nlohmann::json& j)
{
  FamilySpec f;
  f.max_k = j.value("max_k", f.max_k);
  f.decay = j.value("decay", f.decay);
  f.count = j.value("count", f.count);
  return f;
}

nlohmann::ordered_json FamilySpec::to_json() const
{
  return nlohmann::ordered_json{{"max_k", max_k}, {"decay", decay}, {"count", count}};
}

std::uint64_t NormalSampler::next_word()
{
  // splitmix64: tiny, seed-robust, stable across platforms
  state_ += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double NormalSampler::u01()
{
  return static_cast<double>(next_word() >> 11) * 0x1.0p-53;
}

double NormalSampler::operator()()
{
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double a = u01();
  while (a <= 0.0) a = u01();
  const double b = u01();
  const double r = std::sqrt(-2.0 * std::log(a));
  const double theta = 2.0 * 3.14159265358979323846 * b;
  spare_ = r * std::sin(theta);
  have_spare_ = true;
  return r * std::cos(theta);
}

GridFunction sample_function(const Grid& g, const FamilySpec& fam, std::uint64_t seed)
{
  NormalSampler rng(seed);
  const double pi = 3.14159265358979323846;
  GridFunction u(g);
  for (int axis = 0; axis < g.dim; ++axis) {
    for (int k = 1; k <= fam.max_k; ++k) {
      const double scale = 1.0 / std::pow(static_cast<double>(k), fam.decay);
      const double ck = rng() * scale;
      const double sk = rng() * scale;
      for (std::size_t i = 0; i < g.size(); ++i) {
        const double x = g.nodes[i][axis];
        u[i] += ck * std::cos(k * pi * x) + sk * std::sin(k * pi * x);
      }
    }
  }
  return u;
}

std::vector<GridFunction> sample_family(const Grid& g, const FamilySpec& fam,
                                        std::uint64_t seed)
{
  std::vector<GridFunction> out;
  out.reserve(static_cast<std::size_t>(fam.count));
  for (int i = 0; i < fam.count; ++i)
    out.push_back(sample_function(g, fam, seed + 1000003ull * static_cast<std::uint64_t>(i)));
  return out;
}

}  // namespace orlicz
