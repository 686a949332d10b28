#include "tst/clock.hpp"

#include <algorithm>

namespace tst {

ClockUniverse::ClockUniverse(std::vector<ClockId> clocks)
    : clocks_(std::move(clocks)) {
  std::sort(clocks_.begin(), clocks_.end());
  clocks_.erase(std::unique(clocks_.begin(), clocks_.end()), clocks_.end());
}

std::optional<std::size_t> ClockUniverse::index_of(const ClockId& c) const {
  auto it = std::lower_bound(clocks_.begin(), clocks_.end(), c);
  if (it == clocks_.end() || *it != c) return std::nullopt;
  return static_cast<std::size_t>(it - clocks_.begin());
}

std::optional<std::size_t> ClockUniverse::index_of(
    Owner o, const std::string& name) const {
  return index_of(ClockId{o, name});
}

ClockUniverse universe_union(const ClockUniverse& a, const ClockUniverse& b) {
  std::vector<ClockId> all = a.clocks();
  all.insert(all.end(), b.clocks().begin(), b.clocks().end());
  return ClockUniverse(std::move(all));
}

ClockValuation val_zero(const std::vector<ClockId>& clocks) {
  ClockValuation v;
  for (const auto& c : clocks) v.emplace(c, Rational(0));
  return v;
}

const Rational& val_lookup(const ClockValuation& v, const std::string& name) {
  for (const auto& [id, value] : v) {
    if (id.name == name) return value;
  }
  throw std::invalid_argument("unbound clock '" + name + "'");
}

ClockValuation val_update(const ClockValuation& v,
                          const std::optional<Rational>& delta,
                          const std::optional<ResetSet>& resets) {
  if (delta && *delta < Rational(0)) {
    throw std::invalid_argument("negative delay");
  }
  ClockValuation out = v;
  if (delta) {
    for (auto& [id, value] : out) value += *delta;
  }
  if (resets) {
    for (const auto& id : *resets) {
      auto it = out.find(id);
      if (it != out.end()) it->second = Rational(0);
    }
  }
  return out;
}

}  // namespace tst
