#include "ddc/search.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <chrono>
#include <condition_variable>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

#include "ddc/errors.hpp"

namespace ddc {

namespace {

constexpr int kMaxFastOrder = 8;           // int64 window supported up to this m
constexpr int64_t kMaxFastCoeff = int64_t(1) << 41;  // keeps __int128 sums exact
constexpr uint64_t kMaxSpace = uint64_t(1) << 62;    // exact-counter headroom

int64_t int64_from(const Int& v, const char* what) {
  if (!v.fits_slong_p()) {
    throw ResourceError(std::string(what) + " does not fit a machine word: " +
                        to_decimal(v));
  }
  return v.get_si();
}

void mpz_set_i128(mpz_t rop, __int128 v) {
  const bool neg = v < 0;
  unsigned __int128 uv = neg ? -static_cast<unsigned __int128>(v)
                             : static_cast<unsigned __int128>(v);
  mpz_set_ui(rop, static_cast<unsigned long>(uv >> 64));
  mpz_mul_2exp(rop, rop, 64);
  mpz_add_ui(rop, rop, static_cast<unsigned long>(uv));
  if (neg) mpz_neg(rop, rop);
}

struct BranchParams {
  int m = 0;
  long n = 0;
  long r = 0;
  int c1 = 0;
  long prefix_end = 0;  // n - r; indices beyond it up to n must vanish
  BoundVariant variant = BoundVariant::Chained;
  std::vector<int64_t> static_bound;  // index j in [2, m]
  bool fast = false;                  // int64 window allowed
  std::string label;                  // heartbeat context, no math content
};

struct RangeOutput {
  uint64_t enumerated = 0;
  uint64_t pruned_early = 0;
  std::vector<Candidate> candidates;
};

// Enumerates one slice of a branch. Coefficients stay machine-sized (the
// resource gate guarantees it); sequence terms start in int64 with exact
// __int128 accumulation and move to mpz the moment a term leaves int64 range,
// so every comparison is exact regardless of depth.
class BranchEngine {
 public:
  BranchEngine(const BranchParams& p, const SearchOptions& options,
               std::atomic<uint64_t>* tuple_counter)
      : p_(p),
        options_(options),
        tuple_counter_(tuple_counter),
        coeff_(static_cast<size_t>(p.m) + 1, 0),
        pre64_(static_cast<size_t>(p.m), 0),
        preZ_(static_cast<size_t>(p.m)),
        w64_(static_cast<size_t>(p.m), 0),
        wZ_(static_cast<size_t>(p.m)) {
    coeff_[1] = p_.c1;
  }

  void run(const EnumRange& range, RangeOutput& out) {
    if (range.empty()) return;
    out_ = &out;
    setup_base_terms();
    descend(2, range.lo, range.hi);
    out_ = nullptr;
  }

 private:
  // s_0 = 1 and s_1 = c_1 exist before any free coordinate is chosen.
  void setup_base_terms() {
    pre_wide_from_ = p_.m;  // all narrow so far
    pre_viol_ = -1;
    store_prefix_term(0, 1);
    if (p_.m >= 2) store_prefix_term(1, p_.c1);
  }

  void store_prefix_term(long j, int64_t value) {
    pre64_[static_cast<size_t>(j)] = value;
    check_prefix_constraint(j, value < 0 ? -1 : value > 0 ? 1 : 0);
  }

  void check_prefix_constraint(long j, int sign) {
    if (pre_viol_ >= 0 || j > p_.n) return;
    if (j <= p_.prefix_end ? sign <= 0 : sign != 0) pre_viol_ = j;
  }

  // Computes prefix term s_j once c_j is fixed (2 <= j <= m-1).
  void compute_prefix_term(long j) {
    if (pre_viol_ >= 0 && pre_viol_ < j) return;  // verdict already decided
    if (j >= pre_wide_from_) {
      compute_prefix_term_wide(j);
      return;
    }
    __int128 acc = 0;
    for (long q = 1; q <= j; ++q) {
      const __int128 prod =
          static_cast<__int128>(coeff_[static_cast<size_t>(q)]) *
          pre64_[static_cast<size_t>(j - q)];
      acc += (q % 2 == 1) ? prod : -prod;
    }
    if (acc >= INT64_MIN && acc <= INT64_MAX) {
      store_prefix_term(j, static_cast<int64_t>(acc));
      return;
    }
    // Escalate: mirror the narrow history, keep this term wide.
    for (long i = 0; i < j; ++i) {
      preZ_[static_cast<size_t>(i)] = pre64_[static_cast<size_t>(i)];
    }
    pre_wide_from_ = j;
    mpz_set_i128(accZ_.get_mpz_t(), acc);
    preZ_[static_cast<size_t>(j)] = accZ_;
    check_prefix_constraint(j, sgn(preZ_[static_cast<size_t>(j)]));
  }

  void compute_prefix_term_wide(long j) {
    mpz_set_ui(accZ_.get_mpz_t(), 0);
    for (long q = 1; q <= j; ++q) {
      const auto cq = static_cast<unsigned long>(coeff_[static_cast<size_t>(q)]);
      const size_t idx = static_cast<size_t>(j - q);
      const mpz_srcptr prev = (static_cast<long>(idx) >= pre_wide_from_)
                                  ? preZ_[idx].get_mpz_t()
                                  : (mpz_set_si(tmpZ_.get_mpz_t(), pre64_[idx]),
                                     tmpZ_.get_mpz_t());
      if (q % 2 == 1) {
        mpz_addmul_ui(accZ_.get_mpz_t(), prev, cq);
      } else {
        mpz_submul_ui(accZ_.get_mpz_t(), prev, cq);
      }
    }
    mpz_swap(preZ_[static_cast<size_t>(j)].get_mpz_t(), accZ_.get_mpz_t());
    check_prefix_constraint(j, sgn(preZ_[static_cast<size_t>(j)]));
  }

  int64_t level_limit(int level) const {
    if (p_.variant == BoundVariant::Chained && level > 2) {
      return static_cast<int64_t>(p_.c1) * coeff_[static_cast<size_t>(level - 1)];
    }
    return p_.static_bound[static_cast<size_t>(level)];
  }

  void descend(int level, int64_t lo, int64_t hi) {
    if (level == p_.m) {
      leaf_run(lo, hi);
      return;
    }
    const long saved_viol = pre_viol_;
    const long saved_wide = pre_wide_from_;
    for (int64_t v = lo; v <= hi; ++v) {
      coeff_[static_cast<size_t>(level)] = v;
      compute_prefix_term(level);
      const int64_t next_hi = level_limit(level + 1);
      descend(level + 1, 0, next_hi);
      pre_viol_ = saved_viol;
      pre_wide_from_ = saved_wide;
    }
  }

  void leaf_run(int64_t lo, int64_t hi) {
    const int64_t hi2 = std::min(hi, level_limit(p_.m));
    if (lo > hi2) return;
    const uint64_t count = static_cast<uint64_t>(hi2 - lo + 1);

    if (pre_viol_ >= 0) {
      // Every tuple below this prefix fails at the same index.
      out_->enumerated += count;
      if (pre_viol_ < p_.n) out_->pruned_early += count;
      bump_counter(count);
      return;
    }

    for (int64_t v = lo; v <= hi2; ++v) {
      coeff_[static_cast<size_t>(p_.m)] = v;
      ++out_->enumerated;
      evaluate_leaf_tuple();
    }
    bump_counter(count);
  }

  // Continues the sequence from s_m through s_n for the current tuple.
  void evaluate_leaf_tuple() {
    long j = p_.m;
    bool wide = pre_wide_from_ < p_.m || !p_.fast;
    if (wide) {
      for (long i = 0; i < p_.m; ++i) {
        const size_t idx = static_cast<size_t>(i);
        if (i >= pre_wide_from_) {
          wZ_[idx] = preZ_[idx];
        } else {
          mpz_set_si(wZ_[idx].get_mpz_t(), pre64_[idx]);
        }
      }
    } else {
      for (long i = 0; i < p_.m; ++i) {
        w64_[static_cast<size_t>(i)] = pre64_[static_cast<size_t>(i)];
      }
    }

    for (; j <= p_.n; ++j) {
      int sign;
      if (!wide) {
        __int128 acc = 0;
        for (long q = 1; q <= p_.m; ++q) {
          const __int128 prod =
              static_cast<__int128>(coeff_[static_cast<size_t>(q)]) *
              w64_[static_cast<size_t>((j - q) % p_.m)];
          acc += (q % 2 == 1) ? prod : -prod;
        }
        if (acc >= INT64_MIN && acc <= INT64_MAX) {
          const auto val = static_cast<int64_t>(acc);
          w64_[static_cast<size_t>(j % p_.m)] = val;
          sign = val < 0 ? -1 : val > 0 ? 1 : 0;
        } else {
          for (long i = 0; i < p_.m; ++i) {
            mpz_set_si(wZ_[static_cast<size_t>(i)].get_mpz_t(),
                       w64_[static_cast<size_t>(i)]);
          }
          mpz_set_i128(wZ_[static_cast<size_t>(j % p_.m)].get_mpz_t(), acc);
          sign = sgn(wZ_[static_cast<size_t>(j % p_.m)]);
          wide = true;
        }
      } else {
        mpz_set_ui(accZ_.get_mpz_t(), 0);
        for (long q = 1; q <= p_.m; ++q) {
          const auto cq = static_cast<unsigned long>(coeff_[static_cast<size_t>(q)]);
          const mpz_srcptr prev = wZ_[static_cast<size_t>((j - q) % p_.m)].get_mpz_t();
          if (q % 2 == 1) {
            mpz_addmul_ui(accZ_.get_mpz_t(), prev, cq);
          } else {
            mpz_submul_ui(accZ_.get_mpz_t(), prev, cq);
          }
        }
        mpz_swap(wZ_[static_cast<size_t>(j % p_.m)].get_mpz_t(), accZ_.get_mpz_t());
        sign = sgn(wZ_[static_cast<size_t>(j % p_.m)]);
      }

      if (j <= p_.prefix_end ? sign <= 0 : sign != 0) {
        if (j < p_.n) ++out_->pruned_early;
        return;
      }
    }
    emit_candidate();
  }

  void emit_candidate() {
    std::vector<Int> c;
    c.reserve(static_cast<size_t>(p_.m));
    for (int q = 1; q <= p_.m; ++q) c.emplace_back(coeff_[static_cast<size_t>(q)]);

    // Accepted tuples are rare; re-derive them through the reference path so
    // every emitted candidate re-verifies independently of the hot loop.
    SegreTerms evidence;
    const PatternVerdict verdict =
        check_pattern(Coefficients(c), p_.n, p_.r, &evidence);
    if (!verdict.accepted) {
      throw InternalInconsistency(
          "search accepted a tuple the reference pattern check rejects");
    }

    Candidate cand;
    cand.n = p_.n;
    cand.r = p_.r;
    cand.degree = degree_of(c);
    if (options_.huh_filter) {
      cand.rejected_by = positivity_filter_violation(c, p_.n);
      cand.huh_rejected = cand.rejected_by.has_value();
    }
    cand.c = std::move(c);
    if (options_.evidence) {
      cand.delta_evidence.reserve(evidence.size());
      for (long jj = 0; jj <= p_.n; ++jj) {
        cand.delta_evidence.push_back(cand.degree *
                                      evidence[static_cast<size_t>(p_.n - jj)]);
      }
      for (long jj = 0; jj <= p_.n; ++jj) {
        const Int& dj = cand.delta_evidence[static_cast<size_t>(jj)];
        if (jj < p_.r ? sgn(dj) != 0 : sgn(dj) <= 0) {
          throw InternalInconsistency("delta invariants violate the accepted pattern");
        }
      }
      cand.s_evidence = std::move(evidence);
    }
    out_->candidates.push_back(std::move(cand));
  }

  void bump_counter(uint64_t n) {
    if (tuple_counter_) {
      tuple_counter_->fetch_add(n, std::memory_order_relaxed);
    }
  }

  const BranchParams& p_;
  const SearchOptions& options_;
  std::atomic<uint64_t>* tuple_counter_;
  RangeOutput* out_ = nullptr;

  std::vector<int64_t> coeff_;  // coeff_[q] = current c_q, q in [1, m]
  std::vector<int64_t> pre64_;  // prefix terms s_0..s_{m-1}
  std::vector<Int> preZ_;       // wide mirrors, valid from pre_wide_from_
  long pre_wide_from_ = 0;
  long pre_viol_ = -1;

  std::vector<int64_t> w64_;  // leaf window ring
  std::vector<Int> wZ_;
  Int accZ_, tmpZ_;
};

// Emits liveness lines (counts only) to stderr while long branches run.
class Heartbeat {
 public:
  Heartbeat(const std::string& label, const std::atomic<uint64_t>& tuples,
            const std::atomic<uint64_t>& ranges_done, size_t ranges_total)
      : label_(label), tuples_(tuples), ranges_done_(ranges_done),
        ranges_total_(ranges_total), thread_([this] { loop(); }) {}

  ~Heartbeat() {
    {
      std::lock_guard<std::mutex> lock(mutex_);
      stop_ = true;
    }
    cv_.notify_all();
    thread_.join();
  }

 private:
  void loop() {
    std::unique_lock<std::mutex> lock(mutex_);
    while (!cv_.wait_for(lock, std::chrono::seconds(5), [this] { return stop_; })) {
      std::fprintf(stderr, "defectscan: %s: ranges %zu/%zu, tuples %llu\n",
                   label_.c_str(), static_cast<size_t>(ranges_done_.load()),
                   ranges_total_,
                   static_cast<unsigned long long>(tuples_.load()));
    }
  }

  std::string label_;
  const std::atomic<uint64_t>& tuples_;
  const std::atomic<uint64_t>& ranges_done_;
  size_t ranges_total_;
  std::mutex mutex_;
  std::condition_variable cv_;
  bool stop_ = false;
  std::thread thread_;
};

struct BranchOutcome {
  uint64_t enumerated = 0;
  uint64_t pruned_early = 0;
  std::vector<Candidate> candidates;
};

BranchParams make_params(int m, int c1, long n, long r, const SearchOptions& options,
                         std::string label) {
  BranchParams p;
  p.m = m;
  p.n = n;
  p.r = r;
  p.c1 = c1;
  p.prefix_end = n - r;
  p.variant = options.bound_variant;
  p.label = std::move(label);
  p.static_bound.assign(static_cast<size_t>(m) + 1, 0);

  if (m >= 2) {
    const BoundsVector bounds = chern_bounds(c1, m, options.bound_variant);
    Int space = 1;
    for (int j = 2; j <= m; ++j) {
      const Int& bj = bounds.static_bounds[static_cast<size_t>(j - 2)];
      space *= bj + 1;
      if (space >= kMaxSpace) {
        throw ResourceError("tuple space for c1=" + std::to_string(c1) + ", m=" +
                            std::to_string(m) +
                            " exceeds 2^62; exact enumeration accounting refused");
      }
      p.static_bound[static_cast<size_t>(j)] = int64_from(bj, "coefficient bound");
    }
  }
  p.fast = m <= kMaxFastOrder &&
           (m == 1 || p.static_bound[static_cast<size_t>(m)] < kMaxFastCoeff);
  return p;
}

BranchOutcome run_branch(const BranchParams& p, const SearchOptions& options) {
  BranchOutcome outcome;

  if (p.m == 1) {
    // No free coordinates: the branch is the single tuple (c1), evaluated
    // directly through the reference check.
    std::vector<Int> c{Int(p.c1)};
    SegreTerms evidence;
    const PatternVerdict verdict = check_pattern(Coefficients(c), p.n, p.r, &evidence);
    outcome.enumerated = 1;
    if (verdict.accepted) {
      Candidate cand;
      cand.c = c;
      cand.n = p.n;
      cand.r = p.r;
      cand.degree = degree_of(c);
      if (options.huh_filter) {
        cand.rejected_by = positivity_filter_violation(c, p.n);
        cand.huh_rejected = cand.rejected_by.has_value();
      }
      if (options.evidence) {
        for (long j = 0; j <= p.n; ++j) {
          cand.delta_evidence.push_back(cand.degree *
                                        evidence[static_cast<size_t>(p.n - j)]);
        }
        cand.s_evidence = std::move(evidence);
      }
      outcome.candidates.push_back(std::move(cand));
    } else if (*verdict.violation_index < p.n) {
      outcome.pruned_early = 1;
    }
    return outcome;
  }

  const BoundsVector bounds = chern_bounds(p.c1, p.m, options.bound_variant);
  const int workers = std::max(1, options.worker_count);
  const long outer_values = p.static_bound[2] + 1;
  const int pieces =
      workers == 1 ? 1
                   : static_cast<int>(std::min<long>(outer_values, long(workers) * 8));
  const std::vector<EnumRange> ranges = partition_space(bounds, pieces);

  std::vector<RangeOutput> results(ranges.size());
  std::atomic<uint64_t> tuples{0};
  std::atomic<uint64_t> ranges_done{0};
  std::atomic<size_t> cursor{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto drain = [&] {
    try {
      BranchEngine engine(p, options, &tuples);
      size_t i;
      while ((i = cursor.fetch_add(1)) < ranges.size()) {
        engine.run(ranges[i], results[i]);
        ranges_done.fetch_add(1);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!first_error) first_error = std::current_exception();
    }
  };

  {
    Heartbeat heartbeat(p.label, tuples, ranges_done, ranges.size());
    if (workers == 1) {
      drain();
    } else {
      std::vector<std::thread> pool;
      pool.reserve(static_cast<size_t>(workers));
      for (int t = 0; t < workers; ++t) pool.emplace_back(drain);
      for (auto& th : pool) th.join();
    }
  }
  if (first_error) std::rethrow_exception(first_error);

  // Ranges ascend in c_2 and each range emits in lexicographic order, so the
  // in-order concatenation is the sorted union.
  for (const RangeOutput& res : results) {
    outcome.enumerated += res.enumerated;
    outcome.pruned_early += res.pruned_early;
    outcome.candidates.insert(outcome.candidates.end(), res.candidates.begin(),
                              res.candidates.end());
  }
  return outcome;
}

}  // namespace

std::vector<EnumRange> partition_space(const BoundsVector& bounds, int pieces) {
  if (pieces < 1) throw ConstraintError("partition requires at least one piece");
  const long outer = int64_from(bounds.outer(), "outer coordinate bound");
  const long values = outer + 1;
  const long base = values / pieces;
  const long rem = values % pieces;
  std::vector<EnumRange> ranges;
  ranges.reserve(static_cast<size_t>(pieces));
  long lo = 0;
  for (int i = 0; i < pieces; ++i) {
    const long len = base + (i < rem ? 1 : 0);
    if (len == 0) {
      ranges.push_back(EnumRange{lo, lo - 1});
    } else {
      ranges.push_back(EnumRange{lo, lo + len - 1});
      lo += len;
    }
  }
  return ranges;
}

std::vector<Candidate> search_raw(int m, int c1, long n, long r,
                                  const SearchOptions& options) {
  if (m < 1) throw ConstraintError("search requires order m >= 1");
  if (c1 < 1) throw ConstraintError("search requires c1 >= 1");
  if (r < 1 || r > n) {
    throw ConstraintError("search requires 1 <= r <= n, got r=" + std::to_string(r) +
                          ", n=" + std::to_string(n));
  }
  const std::string label = "search m=" + std::to_string(m) + " c1=" +
                            std::to_string(c1) + " n=" + std::to_string(n) +
                            " r=" + std::to_string(r);
  return run_branch(make_params(m, c1, n, r, options, label), options).candidates;
}

Certificate run_case(const CaseSpec& cs, const SearchOptions& options) {
  const CaseSpec valid = admissible_case(cs.N, cs.m);  // reject hand-built specs
  const auto t0 = std::chrono::steady_clock::now();

  Certificate cert;
  cert.cs = valid;
  cert.options = options;
  cert.resolution = "searched";

  for (const DefectBranch& branch : defect_branches(valid)) {
    const std::string label = "N=" + std::to_string(valid.N) + " m=" +
                              std::to_string(valid.m) + " r=" + std::to_string(branch.r);
    BranchOutcome outcome = run_branch(
        make_params(valid.m, branch.c1, valid.n, branch.r, options, label), options);

    const Int bound = degree_bound(valid.N, valid.m, branch.r);
    for (const Candidate& cand : outcome.candidates) {
      if (cand.degree > bound) {
        throw InternalInconsistency("candidate degree exceeds the branch degree bound");
      }
    }

    BranchReport report;
    report.branch = branch;
    report.enumerated = outcome.enumerated;
    report.pruned_early = outcome.pruned_early;
    report.candidates = std::move(outcome.candidates);
    for (const Candidate& cand : report.candidates) {
      if (cand.survives()) cert.verdict = false;
    }
    cert.branches.push_back(std::move(report));
  }

  cert.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return cert;
}

}  // namespace ddc
