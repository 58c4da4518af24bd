#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ddc/casegen.hpp"
#include "ddc/codim3.hpp"
#include "ddc/recurrence.hpp"

namespace ddc {

inline constexpr const char* kToolVersion = "defectscan 0.1.0";

struct SearchOptions {
  BoundVariant bound_variant = BoundVariant::Chained;
  // Log-concavity of (1, c_1, ..., c_m) holds for the Chern numbers of any
  // actual subvariety here (a two-row Schur inequality), so tuples failing it
  // cannot witness a counterexample. On by default; disabling it reduces the
  // test to the bare positive-run/zero-tail pattern, which is defeated by
  // e.g. (4,8,32,64) at m=4, N=14/15.
  bool huh_filter = true;
  int worker_count = 1;
  bool evidence = true;
};

// A tuple whose sequence satisfies the full positive-defect pattern, with the
// evidence a certificate carries: the sequence itself, the degree, and the
// delta invariants delta_j = deg * s_{n-j}. Tuples failing the log-concavity
// constraint are never dropped; they are annotated huh_rejected and do not
// count against the verdict.
struct Candidate {
  std::vector<Int> c;  // c_1 .. c_m
  long n = 0;
  long r = 0;
  SegreTerms s_evidence;             // s_0 .. s_n (empty when evidence is off)
  Int degree;                        // 1 + sum c_j
  std::vector<Int> delta_evidence;   // j = 0 .. n (empty when evidence is off)
  bool huh_rejected = false;         // failed the positivity filter (filter on)
  std::optional<std::string> rejected_by;  // the violated constraint, when rejected

  bool survives() const { return !huh_rejected; }
};

struct BranchReport {
  DefectBranch branch;
  std::uint64_t enumerated = 0;    // tuples inside the active bounds
  std::uint64_t pruned_early = 0;  // rejected before the final index n
  std::vector<Candidate> candidates;
};

struct Certificate {
  CaseSpec cs;
  std::string resolution = "searched";
  SearchOptions options;
  std::vector<BranchReport> branches;
  bool verdict = true;  // true iff no branch produced a surviving candidate
  double wall_time_seconds = 0.0;
  std::string tool_version = kToolVersion;
  std::optional<OddCaseDeduction> deduction;  // resolution "deduced-theorem51"
  std::optional<int> propagated_from;         // resolution "propagated-from(N-1)"

  std::uint64_t surviving_candidates() const {
    std::uint64_t count = 0;
    for (const BranchReport& report : branches) {
      for (const Candidate& cand : report.candidates) {
        if (cand.survives()) ++count;
      }
    }
    return count;
  }
};

// A contiguous slice of the outermost coordinate c_2; empty when lo > hi.
struct EnumRange {
  long lo = 0;
  long hi = -1;
  bool empty() const { return lo > hi; }
};

// Splits [0, B_2] into `pieces` near-equal contiguous ranges (trailing ranges
// may be empty when pieces exceeds the number of values). The union over the
// pieces always covers the full tuple space, so per-range results merge to the
// whole-space result.
std::vector<EnumRange> partition_space(const BoundsVector& bounds, int pieces);

// The enumeration engine, decoupled from geometric admissibility: every tuple
// (c1, c_2, ..., c_m) inside the active bounds is tested against the (n, r)
// pattern, and the accepted ones are returned in lexicographic order of
// (c_2, ..., c_m). Requires m >= 1, c1 >= 1, 1 <= r <= n.
std::vector<Candidate> search_raw(int m, int c1, long n, long r,
                                  const SearchOptions& options);

// Runs every defect branch of the case and assembles the certificate. The
// result (apart from wall_time_seconds) is identical for any worker_count.
Certificate run_case(const CaseSpec& cs, const SearchOptions& options);

}  // namespace ddc
