#include "orlicz/jsonio.hpp"

#include <cmath>
#include <cstdio>

namespace orlicz {

std::string format_double_17(double v)
{
  if (std::isnan(v)) return "null";
  if (std::isinf(v)) return v > 0 ? "1e999" : "-1e999";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void dump_rec(const nlohmann::ordered_json& j, std::string& out, int indent, int level)
{
  const std::string pad(static_cast<std::size_t>(indent) * level, ' ');
  const std::string pad_in(static_cast<std::size_t>(indent) * (level + 1), ' ');
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) { out += "{}"; return; }
      out += "{\n";
      std::size_t k = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++k) {
        out += pad_in;
        out += nlohmann::json(it.key()).dump();
        out += ": ";
        dump_rec(it.value(), out, indent, level + 1);
        if (k + 1 < j.size()) out += ',';
        out += '\n';
      }
      out += pad + "}";
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) { out += "[]"; return; }
      out += "[\n";
      for (std::size_t k = 0; k < j.size(); ++k) {
        out += pad_in;
        dump_rec(j[k], out, indent, level + 1);
        if (k + 1 < j.size()) out += ',';
        out += '\n';
      }
      out += pad + "]";
      return;
    }
    case nlohmann::json::value_t::number_float:
      out += format_double_17(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

}  // namespace

std::string dump_json_17(const nlohmann::ordered_json& j, int indent)
{
  std::string out;
  dump_rec(j, out, indent, 0);
  out += '\n';
  return out;
}

std::uint64_t fnv1a64(const std::string& s)
{
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string fnv1a64_hex(const std::string& s)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(s)));
  return buf;
}

}  // namespace orlicz
