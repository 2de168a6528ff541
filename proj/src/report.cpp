#include "rigidcheck/report.hpp"

#include <sstream>

namespace rigidcheck {

std::string RigidityReport::verdict() const {
  if (globally_rigid == GlobalVerdict::Rigid) return "globally g-rigid (" + certifying_criterion + ")";
  switch (locally_rigid) {
    case LocalVerdict::Flexible:
      return globally_rigid == GlobalVerdict::Inconclusive ? "not locally g-rigid; global rigidity inconclusive"
                                                            : "flexible (not locally g-rigid)";
    case LocalVerdict::Rigid:
      return globally_rigid == GlobalVerdict::Inconclusive ? "locally g-rigid; global rigidity inconclusive"
                                                            : "locally g-rigid";
    case LocalVerdict::Unknown:
      break;
  }
  return globally_rigid == GlobalVerdict::Inconclusive ? "inconclusive" : "unknown";
}

namespace {

std::string to_string(LocalVerdict v) {
  switch (v) {
    case LocalVerdict::Rigid: return "rigid";
    case LocalVerdict::Flexible: return "flexible";
    case LocalVerdict::Unknown: return "unknown";
  }
  return "unknown";
}

std::string to_string(GlobalVerdict v) {
  switch (v) {
    case GlobalVerdict::Rigid: return "rigid";
    case GlobalVerdict::Inconclusive: return "inconclusive";
    case GlobalVerdict::NotAssessed: return "not assessed";
  }
  return "not assessed";
}

}  // namespace

Json to_json(const RigidityReport& r) {
  Json conditions = Json::array();
  for (const auto& c : r.conditions) conditions.push_back({{"name", c.name}, {"holds", c.holds}, {"witness", c.witness}});
  Json out;
  out["instance"] = r.instance;
  out["map"] = r.map;
  out["d"] = r.d;
  out["ranks"] = {{"jacobian", r.jacobian_rank}, {"reference", r.reference_rank}};
  out["shadow_size"] = r.shadow_size ? Json(*r.shadow_size) : Json(nullptr);
  out["kernel_dims"] = r.kernel_dims ? Json{{"left", r.kernel_dims->left}, {"right", r.kernel_dims->right}} : Json(nullptr);
  out["conditions"] = std::move(conditions);
  out["verdict"] = r.verdict();
  out["verdicts"] = {{"infinitesimally_rigid_at_p", r.infinitesimally_rigid_at_p},
                     {"locally_rigid", to_string(r.locally_rigid)},
                     {"globally_rigid", to_string(r.globally_rigid)}};
  out["certificate"] = {{"seed", r.certificate.seed},
                        {"domain", to_string(r.certificate.domain)},
                        {"primes", r.certificate.primes},
                        {"trials", r.certificate.trials}};
  if (!r.certifying_criterion.empty()) out["criterion"] = r.certifying_criterion;
  if (!r.notes.empty()) out["notes"] = r.notes;
  return out;
}

std::string to_text(const RigidityReport& r) {
  std::ostringstream os;
  os << "instance:  " << r.instance << "\n"
     << "map:       " << r.map << " (d=" << r.d << ")\n"
     << "ranks:     jacobian " << r.jacobian_rank << ", reference " << r.reference_rank << "\n";
  if (r.shadow_size) os << "shadow:    " << *r.shadow_size << " multisets\n";
  if (r.kernel_dims) os << "kernels:   right " << r.kernel_dims->right << ", left " << r.kernel_dims->left << "\n";
  for (const auto& c : r.conditions) os << "  [" << (c.holds ? "ok" : "--") << "] " << c.name << "  " << c.witness.dump() << "\n";
  for (const auto& n : r.notes) os << "note:      " << n << "\n";
  os << "verdict:   " << r.verdict() << "\n"
     << "seed:      " << r.certificate.seed << " (" << to_string(r.certificate.domain) << ", " << r.certificate.trials
     << " trials)\n";
  return os.str();
}

}  // namespace rigidcheck
