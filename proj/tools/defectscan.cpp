// defectscan: exhaustive, certificate-producing verifier for the duality
// defect conjecture in codimension m >= 3.
//
// Subcommands:
//   verify    search (or deduce/propagate) a range of (N, m) cases
//   bound     print the degree bound for each defect branch of a case
//   seq       print a Segre sequence (and the aligned u-sequence for order 3)
//   classify  scan small coefficient triples for double-zero patterns
//
// Exit codes: 0 all verdicts True; 1 candidates found; 2 usage/constraint
// errors; 3 classification anomaly (self-inconsistency signal).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "ddc/certificate.hpp"
#include "ddc/codim3.hpp"
#include "ddc/errors.hpp"
#include "ddc/search.hpp"

namespace fs = std::filesystem;

namespace {

struct NRange {
  int lo = 0;
  int hi = 0;
};

NRange parse_n_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const int v = std::stoi(text);
      return {v, v};
    }
    const int lo = std::stoi(text.substr(0, dots));
    const int hi = std::stoi(text.substr(dots + 2));
    if (hi < lo) throw ddc::ConstraintError("empty N range: " + text);
    return {lo, hi};
  } catch (const ddc::ConstraintError&) {
    throw;
  } catch (const std::exception&) {
    throw ddc::ConstraintError("cannot parse --N value '" + text +
                               "' (expected a single N or a..b)");
  }
}

std::vector<ddc::Int> parse_coeff_list(const std::string& text) {
  std::vector<ddc::Int> coeffs;
  std::string item;
  std::stringstream stream(text);
  while (std::getline(stream, item, ',')) {
    coeffs.push_back(ddc::from_decimal(item));
  }
  if (coeffs.empty()) throw ddc::ConstraintError("empty coefficient list");
  return coeffs;
}

void print_terms(const std::string& name, long first, const std::vector<ddc::Int>& terms) {
  std::cout << name << "[" << first << ".." << first + static_cast<long>(terms.size()) - 1
            << "] =";
  for (const ddc::Int& t : terms) std::cout << ' ' << ddc::to_decimal(t);
  std::cout << '\n';
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct VerifyArgs {
  int codim = 0;
  std::string n_range;
  bool even_only = false;
  bool propagate = false;
  bool propagate_general = false;
  bool theorem51 = false;
  bool huh_filter = true;
  std::string bound_variant = "chained";
  int threads = 0;
  std::string out_dir = "certs";
  std::string format = "json";
  bool evidence = true;
};

enum class Plan { Search, Propagate, Deduce, Skip };

struct ManifestEntry {
  int N = 0;
  Plan plan = Plan::Search;
  std::string skip_reason;
};

std::vector<ManifestEntry> build_manifest(const VerifyArgs& args, const NRange& range) {
  const int m = args.codim;
  const bool propagation_on = args.propagate || args.propagate_general;
  std::vector<ManifestEntry> manifest;

  for (int N = range.lo; N <= range.hi; ++N) {
    ManifestEntry entry{N, Plan::Search, {}};
    // A target can also draw on a prior certificate file, so the range start
    // is eligible too; the runner falls back when no source exists.
    const bool propagation_target = propagation_on && (N - m) % 2 == 0;
    if (args.theorem51) {
      if (N % 2 == 1) {
        entry.plan = Plan::Deduce;
      } else {
        entry.plan = Plan::Skip;
        entry.skip_reason = "even N is outside the odd-dimension deduction (--theorem51)";
      }
    } else if (N % 2 == 1 && args.even_only) {
      if (propagation_target) {
        entry.plan = Plan::Propagate;
      } else {
        entry.plan = Plan::Skip;
        entry.skip_reason = "odd N skipped (--even-only)";
      }
    } else if (propagation_target) {
      entry.plan = Plan::Propagate;
    }
    if (entry.plan != Plan::Skip) {
      ddc::admissible_case(N, m);  // throws with the violated constraint
    }
    manifest.push_back(std::move(entry));
  }

  // With --even-only every verified even N also certifies its odd companion,
  // including the one just past the range end.
  if (propagation_on && args.even_only && (range.hi + 1 - m) % 2 == 0) {
    manifest.push_back(ManifestEntry{range.hi + 1, Plan::Propagate, {}});
  }
  return manifest;
}

int run_verify(const VerifyArgs& args) {
  const NRange range = parse_n_range(args.n_range);
  if (args.propagate && args.codim != 3) {
    throw ddc::ConstraintError(
        "--propagate covers codimension 3 only; use --propagate-general for the "
        "general even-dimension rule");
  }
  if (args.theorem51 && args.codim != 3) {
    throw ddc::ConstraintError("--theorem51 applies to codimension 3 only");
  }

  ddc::SearchOptions options;
  options.bound_variant = ddc::bound_variant_from_string(args.bound_variant);
  options.huh_filter = args.huh_filter;
  options.evidence = args.evidence;
  options.worker_count =
      args.threads > 0 ? args.threads
                       : std::max(1u, std::thread::hardware_concurrency());

  const std::vector<ManifestEntry> manifest = build_manifest(args, range);
  fs::create_directories(args.out_dir);

  std::map<int, ddc::Certificate> done;
  std::vector<std::string> csv_rows;
  bool any_candidates = false;

  auto source_for = [&](int N) -> std::optional<ddc::Certificate> {
    if (auto it = done.find(N - 1); it != done.end()) return it->second;
    const fs::path prior = fs::path(args.out_dir) / ddc::certificate_file_name(N - 1, args.codim);
    if (fs::exists(prior)) {
      try {
        return ddc::read_certificate_file(prior);
      } catch (const std::exception& e) {
        std::cerr << "defectscan: ignoring unreadable prior certificate " << prior
                  << ": " << e.what() << '\n';
      }
    }
    return std::nullopt;
  };

  for (const ManifestEntry& entry : manifest) {
    if (entry.plan == Plan::Skip) {
      std::cout << "N=" << entry.N << " m=" << args.codim
                << " skipped: " << entry.skip_reason << '\n';
      continue;
    }

    ddc::Certificate cert;
    switch (entry.plan) {
      case Plan::Deduce:
        cert = ddc::make_deduced_certificate(entry.N, options);
        break;
      case Plan::Propagate: {
        const auto source = source_for(entry.N);
        if (source && source->verdict) {
          cert = ddc::make_propagated_certificate(entry.N, args.codim, *source, options);
        } else if (args.even_only) {
          std::cout << "N=" << entry.N << " m=" << args.codim
                    << " skipped: no verified (N-1) source for propagation\n";
          continue;
        } else {
          std::cerr << "defectscan: no verified (N-1) source for N=" << entry.N
                    << "; searching it directly\n";
          cert = ddc::run_case(ddc::admissible_case(entry.N, args.codim), options);
        }
        break;
      }
      case Plan::Search:
        cert = ddc::run_case(ddc::admissible_case(entry.N, args.codim), options);
        break;
      case Plan::Skip:
        continue;
    }

    const fs::path path =
        fs::path(args.out_dir) / ddc::certificate_file_name(entry.N, args.codim);
    ddc::write_certificate_file(cert, path);
    done[entry.N] = cert;
    const std::string row = ddc::csv_row(cert);
    csv_rows.push_back(row);

    uint64_t annotated = 0;
    uint64_t enumerated = 0;
    for (const auto& report : cert.branches) {
      for (const auto& cand : report.candidates) {
        if (!cand.survives()) ++annotated;
      }
      enumerated += report.enumerated;
    }
    const uint64_t surviving = cert.surviving_candidates();
    if (surviving > 0) any_candidates = true;
    std::cout << "N=" << cert.cs.N << " m=" << cert.cs.m << " " << cert.resolution
              << " verdict=" << (cert.verdict ? "True" : "False")
              << " candidates=" << surviving;
    if (annotated > 0) std::cout << " huh_rejected=" << annotated;
    std::cout << " enumerated=" << enumerated
              << " seconds=" << row.substr(row.rfind(',') + 1) << '\n';
  }

  if (args.format == "csv") {
    const fs::path summary = fs::path(args.out_dir) / "summary.csv";
    std::ofstream out(summary);
    out << ddc::csv_header() << '\n';
    for (const std::string& row : csv_rows) out << row << '\n';
  }

  return any_candidates ? 1 : 0;
}

// ---------------------------------------------------------------------------
// bound / seq / classify
// ---------------------------------------------------------------------------

int run_bound(int codim, const std::string& n_text, int defect) {
  const NRange range = parse_n_range(n_text);
  if (range.lo != range.hi) {
    throw ddc::ConstraintError("bound expects a single N, not a range");
  }
  const ddc::CaseSpec cs = ddc::admissible_case(range.lo, codim);
  if (defect > 0) {
    std::cout << "r=" << defect << ": "
              << ddc::to_decimal(ddc::degree_bound(cs.N, cs.m, defect)) << '\n';
    return 0;
  }
  for (const ddc::DefectBranch& branch : ddc::defect_branches(cs)) {
    std::cout << "r=" << branch.r << ": "
              << ddc::to_decimal(ddc::degree_bound(cs.N, cs.m, branch.r)) << '\n';
  }
  return 0;
}

int run_seq(const std::string& coeff_text, long len) {
  const std::vector<ddc::Int> coeffs = parse_coeff_list(coeff_text);
  const ddc::Coefficients c(coeffs);
  print_terms("s", 0, ddc::segre_sequence(c, len));
  if (c.order() == 3) {
    bool alignable = true;
    for (const ddc::Int& v : coeffs) {
      alignable = alignable && sgn(v) > 0 && v.fits_slong_p();
    }
    if (alignable) {
      const ddc::USequence u = ddc::u_sequence(coeffs[0].get_si(), coeffs[1].get_si(),
                                               coeffs[2].get_si(), len + 2);
      print_terms("u", 0, u.terms);
    }
  }
  return 0;
}

int run_classify(long cmax, long horizon) {
  if (cmax < 0) throw ddc::ConstraintError("--cmax must be >= 0");
  const ddc::ClassificationMap found = ddc::brute_force_classify(cmax, horizon);
  std::map<long, long> histogram;
  long anomalies = 0;
  for (const auto& [triple, m] : found) {
    ++histogram[m];
    const ddc::LemmaReport report =
        ddc::verify_lemma_structure(triple[0], triple[1], triple[2], m);
    if (report.anomaly) {
      ++anomalies;
      std::cerr << "ANOMALY at (c1,c2,c3)=(" << triple[0] << "," << triple[1] << ","
                << triple[2] << "), m=" << m << ": " << *report.anomaly << '\n';
    }
  }
  const long total = cmax >= 1 ? cmax * cmax * cmax : 0;
  std::cout << "triples with a double-zero pattern: " << found.size() << " of " << total
            << '\n';
  for (const auto& [m, count] : histogram) {
    std::cout << "m=" << m << ": " << count << '\n';
  }
  std::cout << "anomalies: " << anomalies << '\n';
  if (anomalies > 0) {
    std::cerr << "defectscan: classification is inconsistent with the double-zero "
                 "structure; this is an implementation bug\n";
    return 3;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"duality defect conjecture verifier"};
  app.set_version_flag("--version", std::string(ddc::kToolVersion));
  app.require_subcommand(1);

  VerifyArgs vargs;
  CLI::App* verify = app.add_subcommand("verify", "search a range of (N, m) cases");
  verify->add_option("--codim", vargs.codim, "codimension m >= 3")->required();
  verify->add_option("--N", vargs.n_range, "ambient dimension, single N or a..b")->required();
  verify->add_flag("--even-only", vargs.even_only, "search only even N");
  verify->add_flag("--propagate", vargs.propagate,
                   "resolve odd N from verified even N-1 (codimension 3)");
  verify->add_flag("--propagate-general", vargs.propagate_general,
                   "resolve N from verified N-1 whenever N-m is even");
  verify->add_flag("--theorem51", vargs.theorem51,
                   "resolve odd N by the odd-dimension deduction, no enumeration");
  verify->add_flag("--huh-filter,!--no-huh-filter", vargs.huh_filter,
                   "exclude log-concavity-violating tuples from the verdict "
                   "(annotated in certificates either way; on by default)");
  verify->add_option("--bound-variant", vargs.bound_variant, "plain|chained")
      ->check(CLI::IsMember({"plain", "chained"}));
  verify->add_option("--threads", vargs.threads, "worker count (default: hardware)");
  verify->add_option("--out", vargs.out_dir, "certificate output directory");
  verify->add_option("--format", vargs.format, "json|csv (csv adds summary.csv)")
      ->check(CLI::IsMember({"json", "csv"}));
  verify->add_flag("--evidence,!--no-evidence", vargs.evidence,
                   "include sequence evidence in candidate records");

  int bound_codim = 0, bound_defect = 0;
  std::string bound_n;
  CLI::App* bound = app.add_subcommand("bound", "print degree bounds per defect branch");
  bound->add_option("--codim", bound_codim, "codimension m >= 3")->required();
  bound->add_option("--N", bound_n, "ambient dimension")->required();
  bound->add_option("--defect", bound_defect, "restrict to one defect value");

  std::string seq_coeffs;
  long seq_len = 10;
  CLI::App* seq = app.add_subcommand("seq", "print a Segre sequence");
  seq->add_option("--coeffs", seq_coeffs, "comma-separated c_1,...,c_m")->required();
  seq->add_option("--len", seq_len, "last index to print");

  long classify_cmax = 0, classify_horizon = 60;
  CLI::App* classify =
      app.add_subcommand("classify", "scan [1,cmax]^3 for double-zero patterns");
  classify->add_option("--cmax", classify_cmax, "coefficient ceiling")->required();
  classify->add_option("--horizon", classify_horizon, "scan horizon (default 60)");

  try {
    app.parse(argc, argv);
    if (*verify) return run_verify(vargs);
    if (*bound) return run_bound(bound_codim, bound_n, bound_defect);
    if (*seq) return run_seq(seq_coeffs, seq_len);
    if (*classify) return run_classify(classify_cmax, classify_horizon);
    return 2;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const ddc::ResourceError& e) {
    std::cerr << "defectscan: resource: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "defectscan: error: " << e.what() << '\n';
    return 2;
  }
}
