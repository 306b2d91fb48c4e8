#include "af/equations.hpp"

#include <algorithm>
#include <cctype>

namespace af {

std::string to_string(ModelKind k) {
  switch (k) {
    case ModelKind::Advection: return "advection";
    case ModelKind::Burgers: return "burgers";
    case ModelKind::Euler: return "euler";
  }
  return "unknown";
}

std::string to_string(SplittingKind k) {
  switch (k) {
    case SplittingKind::LLF: return "llf";
    case SplittingKind::SW: return "sw";
    case SplittingKind::VH: return "vh";
  }
  return "unknown";
}

SplittingKind parse_splitting(const std::string& s) {
  std::string t = s;
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "llf") return SplittingKind::LLF;
  if (t == "sw") return SplittingKind::SW;
  if (t == "vh") return SplittingKind::VH;
  throw ConfigError("unknown splitting '" + s + "' (expected llf, sw or vh)");
}

}  // namespace af
