#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rigidcheck/field.hpp"

namespace rigidcheck {

using Json = nlohmann::ordered_json;

/// One checked hypothesis with a machine-readable witness.
struct Condition {
  std::string name;
  bool holds = false;
  Json witness;
};

struct Certificate {
  std::uint64_t seed = 0;
  Domain domain = Domain::ModP;
  int trials = 0;
  std::vector<std::uint64_t> primes;
};

enum class LocalVerdict { Rigid, Flexible, Unknown };
enum class GlobalVerdict { Rigid, Inconclusive, NotAssessed };

struct KernelDims {
  long left = 0;   // |V| - rank of the adjacency blocks side by side
  long right = 0;  // |shadow| - rank of the stacked adjacency blocks
};

struct RigidityReport {
  std::string instance;
  std::string map;
  int d = 0;

  bool infinitesimally_rigid_at_p = false;
  LocalVerdict locally_rigid = LocalVerdict::Unknown;
  GlobalVerdict globally_rigid = GlobalVerdict::NotAssessed;

  long jacobian_rank = -1;
  long reference_rank = -1;
  std::optional<long> shadow_size;
  std::optional<KernelDims> kernel_dims;
  std::vector<Condition> conditions;
  Certificate certificate;
  std::string certifying_criterion;
  std::vector<std::string> notes;

  std::string verdict() const;
};

Json to_json(const RigidityReport& report);
std::string to_text(const RigidityReport& report);

}  // namespace rigidcheck
