#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "unil/complexes.hpp"

namespace unil {

/// The finite slice of parameter space the sweeps run over: every polynomial
/// of degree <= max_deg with coefficients drawn from coeff_set.
struct SweepConfig {
  unsigned max_deg = 3;
  std::vector<long> coeff_set{0, 1, 2};
  unsigned threads = 1;
};

std::vector<PolyInt> sweep_polys(const SweepConfig& cfg);
std::vector<PolyInt> sweep_polys(unsigned max_deg, const std::vector<long>& coeff_set);

struct CheckContext {
  SweepConfig sweep;
  GeneratorSet gens;
};

struct CheckOutcome {
  bool pass = true;
  std::size_t cases = 0;
  std::string detail;  // first failing case, if any
};

struct CheckSpec {
  std::string id;      // stable identifier, e.g. "boundary.fixture"
  std::string anchor;  // the statement the check establishes
  std::function<CheckOutcome(const CheckContext&)> run;
};

/// Every check, in report order.
const std::vector<CheckSpec>& check_registry();

struct CheckResult {
  std::string id;
  std::string anchor;
  bool pass = false;
  std::size_t cases = 0;
  std::string detail;
  double seconds = 0;
};

struct VerificationReport {
  std::vector<CheckResult> results;
  bool all_pass() const;
};

struct VerifyOptions {
  std::string filter = "*";  // glob over check ids
  bool fail_fast = false;    // stop at the first failing check
};

/// Runs the matching checks, concurrently when cfg.threads > 1. Results are
/// in registry order regardless of scheduling.
VerificationReport run_verification(const CheckContext& ctx, const VerifyOptions& opts = {});

/// '*' matches any run, '?' one character.
bool glob_match(std::string_view pattern, std::string_view text);

/// Human-readable report; timings are omitted when with_timing is false so
/// that reports can be compared across runs.
std::string format_report(const VerificationReport& r, bool with_timing = true);
/// Flat key-value summary: check.<id>=pass|fail, check.<id>.seconds=..., overall=...
std::string format_summary(const VerificationReport& r);

/// A single sign flip in the fixture matrices of M_{p,g} or Q_q.
struct Mutation {
  std::string name;
  GeneratorSet gens;
};

/// Every flip that changes the fixture: negation of a nonzero entry of
/// gamma, mu or theta, and T -> -T inside an entry that involves T.
std::vector<Mutation> fixture_mutations();

}  // namespace unil
