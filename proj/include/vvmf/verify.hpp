#pragma once

// Invariant suite run by `vvmf verify` over the built-in corpus.

#include "vvmf/io.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace vvmf {

struct CorpusEntry {
  std::string name;
  std::shared_ptr<const DiscForm> form;
};

/// Gram forms [[2]], [[-2]], A2, [[2,1],[1,-2]], E8, [[4]], [[6]], the hyperbolic plane,
/// and the direct forms Z/5, Z/13.
std::vector<CorpusEntry> builtin_corpus();

struct CheckResult {
  std::string name;
  std::string form;  // empty for form-independent checks
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

struct VerifyOptions {
  std::uint64_t seed = 20240601;
  int samples = 10;  // random elements per randomized check
  bool parallel = true;
};

std::vector<CheckResult> run_verify(const std::vector<CorpusEntry>& corpus, const VerifyOptions& opt = {});

/// Deterministic report: timings are left out.
Json report_json(const std::vector<CheckResult>& results);

}  // namespace vvmf
