#include "tst/config.hpp"

namespace tst {

EndpointConfig initial_endpoint(const TstPtr& p, Owner owner) {
  std::vector<ClockId> clocks;
  for (const auto& name : term_clocks(p)) clocks.push_back({owner, name});
  return EndpointConfig{p, {}, val_zero(clocks)};
}

SystemConfig initial_system(const TstPtr& p, const TstPtr& q) {
  return SystemConfig{initial_endpoint(p, Owner::left),
                      initial_endpoint(q, Owner::right)};
}

std::string queue_to_string(const Queue& q) {
  if (q.empty()) return "-";
  std::string out;
  for (const auto& a : q) {
    if (!out.empty()) out += ";";
    out += a;
  }
  return out;
}

}  // namespace tst
