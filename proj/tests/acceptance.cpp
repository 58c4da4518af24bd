// Acceptance suite: runs the end-to-end verification targets with their
// pinned thresholds and prints one PASS/FAIL line per criterion.
//
// Usage: acceptance <path-to-defectscan> <work-dir> [--extended]
//
// --extended additionally runs the codimension-5 N=18 search, which is a
// deliberately long job and not part of the fast gate.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ddc/casegen.hpp"
#include "ddc/certificate.hpp"
#include "ddc/codim3.hpp"
#include "ddc/recurrence.hpp"
#include "ddc/search.hpp"
#include "support/oracles.hpp"

namespace fs = std::filesystem;
using ddc::Int;

namespace {

std::string g_cli;
fs::path g_work;
int g_failures = 0;

struct CliResult {
  int exit_code = -1;
  std::string output;
};

CliResult run_cli(const std::string& args) {
  const fs::path out_file = g_work / "cli_stdout.txt";
  const std::string cmd = g_cli + " " + args + " > " + out_file.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  CliResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out_file);
  result.output.assign(std::istreambuf_iterator<char>(in), {});
  return result;
}

void report(int criterion, bool ok, const std::string& what, double seconds,
            const std::string& detail = "") {
  std::printf("%s criterion %d: %s (%.1fs)%s%s\n", ok ? "PASS" : "FAIL", criterion,
              what.c_str(), seconds, detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

void run_criterion(int criterion, const std::string& what, double budget_seconds,
                   const std::function<bool(std::string&)>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (ok && budget_seconds > 0 && seconds > budget_seconds) {
    ok = false;
    detail = "exceeded the " + std::to_string(budget_seconds) + "s budget";
  }
  report(criterion, ok, what, seconds, detail);
}

bool all_true_certs(const fs::path& dir, int m, int lo, int hi, std::string& detail,
                    const std::string& expected_resolution = "") {
  for (int N = lo; N <= hi; ++N) {
    const fs::path path = dir / ddc::certificate_file_name(N, m);
    if (!fs::exists(path)) {
      detail = "missing certificate " + path.string();
      return false;
    }
    const ddc::Certificate cert = ddc::read_certificate_file(path);
    if (!cert.verdict) {
      detail = "verdict False at N=" + std::to_string(N);
      return false;
    }
    if (!expected_resolution.empty() && cert.resolution != expected_resolution) {
      detail = "unexpected resolution '" + cert.resolution + "' at N=" + std::to_string(N);
      return false;
    }
  }
  return true;
}

std::vector<Int> ints(std::initializer_list<long> values) {
  return std::vector<Int>(values.begin(), values.end());
}

// ---------------------------------------------------------------------------

bool criterion1(std::string& detail) {
  const fs::path dir = g_work / "c1";
  fs::remove_all(dir);
  const CliResult run = run_cli("verify --codim 3 --N 10..60 --even-only --propagate --out " +
                                dir.string());
  if (run.exit_code != 0) {
    detail = "exit code " + std::to_string(run.exit_code);
    return false;
  }
  return all_true_certs(dir, 3, 10, 61, detail);
}

bool criterion2(std::string& detail) {
  const fs::path dir = g_work / "c2";
  fs::remove_all(dir);
  const CliResult run = run_cli("verify --codim 4 --N 14..24 --out " + dir.string());
  if (run.exit_code != 0) {
    detail = "exit code " + std::to_string(run.exit_code);
    return false;
  }
  return all_true_certs(dir, 4, 14, 24, detail);
}

bool criterion3(std::string& detail) {
  const fs::path dir = g_work / "c3";
  fs::remove_all(dir);
  const CliResult run = run_cli("verify --codim 5 --N 18 --out " + dir.string());
  if (run.exit_code != 0) {
    detail = "exit code " + std::to_string(run.exit_code);
    return false;
  }
  return all_true_certs(dir, 5, 18, 18, detail);
}

bool criterion4(std::string& detail) {
  // The (3,9,27) listing's index-10 digit is forced to 6561 by the recurrence
  // itself (27*243, and 3*6561 = 19683 next); see the project notes.
  const bool first = ddc::u_sequence(3, 9, 27, 13).terms ==
                     ints({0, 0, 1, 3, 0, 0, 81, 243, 0, 0, 6561, 19683, 0, 0});
  const bool second = ddc::u_sequence(4, 8, 8, 13).terms ==
                      ints({0, 0, 1, 4, 8, 8, 0, 0, 64, 256, 512, 512, 0, 0});
  if (!first) detail = "(3,9,27) mismatch";
  if (!second) detail += std::string(detail.empty() ? "" : "; ") + "(4,8,8) mismatch";
  return first && second;
}

bool criterion5(std::string& detail) {
  const CliResult run = run_cli("classify --cmax 12 --horizon 60");
  if (run.exit_code != 0) {
    detail = "exit code " + std::to_string(run.exit_code);
    return false;
  }
  const bool has4 = run.output.find("m=4: ") != std::string::npos;
  const bool has6 = run.output.find("m=6: ") != std::string::npos;
  const bool clean = run.output.find("anomalies: 0") != std::string::npos;
  // No histogram line outside {4, 6}: every "m=" line must be one of the two.
  std::istringstream lines(run.output);
  std::string line;
  bool only46 = true;
  while (std::getline(lines, line)) {
    if (line.rfind("m=", 0) == 0 && line.rfind("m=4:", 0) != 0 && line.rfind("m=6:", 0) != 0) {
      only46 = false;
    }
  }
  if (!has4 || !has6) detail = "missing an m-value";
  if (!only46) detail = "histogram contains an index outside {4, 6}";
  if (!clean) detail = "anomalies reported";
  return has4 && has6 && only46 && clean;
}

bool criterion6(std::string& detail) {
  ddc::SearchOptions options;
  options.worker_count = 2;
  const auto first = ddc::search_raw(3, 3, 3, 2, options);
  const auto second = ddc::search_raw(3, 4, 5, 2, options);
  auto has = [](const std::vector<ddc::Candidate>& candidates,
                std::initializer_list<long> tuple) {
    const std::vector<Int> want(tuple.begin(), tuple.end());
    for (const auto& cand : candidates) {
      if (cand.c == want) return true;
    }
    return false;
  };
  if (!has(first, {3, 9, 27})) {
    detail = "(3,9,27) not found";
    return false;
  }
  if (!has(second, {4, 8, 8})) {
    detail = "(4,8,8) not found";
    return false;
  }
  // Cross-check both against the unpruned brute-force oracle.
  auto to_triples = [](const std::vector<ddc::Candidate>& candidates) {
    std::vector<std::array<long, 3>> out;
    for (const auto& cand : candidates) {
      out.push_back({cand.c[0].get_si(), cand.c[1].get_si(), cand.c[2].get_si()});
    }
    return out;
  };
  ddc::SearchOptions plain = options;
  plain.bound_variant = ddc::BoundVariant::Plain;
  if (to_triples(ddc::search_raw(3, 3, 3, 2, plain)) != oracles::naive_search_m3(3, 3, 2)) {
    detail = "oracle disagreement at (c1=3, n=3, r=2)";
    return false;
  }
  if (to_triples(ddc::search_raw(3, 4, 5, 2, plain)) != oracles::naive_search_m3(4, 5, 2)) {
    detail = "oracle disagreement at (c1=4, n=5, r=2)";
    return false;
  }
  return true;
}

bool criterion7(std::string& detail) {
  const bool bound_ok = ddc::degree_bound(11, 3, 2) == oracles::geometric_sum(3, 3) &&
                        ddc::degree_bound(11, 3, 2) == 40;
  const bool degree_ok = ddc::degree_of(ints({3, 9, 27})) == 40;
  if (!bound_ok) detail = "degree_bound(11,3,2) != 40";
  if (!degree_ok) detail += std::string(detail.empty() ? "" : "; ") + "degree_of != 40";
  return bound_ok && degree_ok;
}

bool criterion8(std::string& detail) {
  const fs::path dir = g_work / "c8";
  fs::remove_all(dir);
  const CliResult run =
      run_cli("verify --codim 3 --N 11..201 --theorem51 --out " + dir.string());
  if (run.exit_code != 0) {
    detail = "exit code " + std::to_string(run.exit_code);
    return false;
  }
  for (int N = 11; N <= 201; N += 2) {
    const fs::path path = dir / ddc::certificate_file_name(N, 3);
    if (!fs::exists(path)) {
      detail = "missing deduction certificate for N=" + std::to_string(N);
      return false;
    }
    const ddc::Certificate cert = ddc::read_certificate_file(path);
    if (!cert.verdict || cert.resolution != "deduced-theorem51" || !cert.branches.empty()) {
      detail = "malformed deduction certificate at N=" + std::to_string(N);
      return false;
    }
  }
  for (int N = 12; N <= 200; N += 2) {
    if (fs::exists(dir / ddc::certificate_file_name(N, 3))) {
      detail = "even N=" + std::to_string(N) + " was not skipped";
      return false;
    }
  }
  return true;
}

bool criterion9(std::string& detail) {
  std::vector<std::string> normalized;
  for (int workers : {1, 2, 8}) {
    const fs::path dir = g_work / ("c9_" + std::to_string(workers));
    fs::remove_all(dir);
    const CliResult run = run_cli("verify --codim 4 --N 14 --threads " +
                                  std::to_string(workers) + " --out " + dir.string());
    if (run.exit_code != 0) {
      detail = "exit code " + std::to_string(run.exit_code);
      return false;
    }
    std::ifstream in(dir / ddc::certificate_file_name(14, 4));
    auto doc = nlohmann::ordered_json::parse(in);
    // The wall clock and the requested worker count are run metadata by
    // construction; everything else must agree byte for byte.
    doc["wall_time_seconds"] = "-";
    doc["options"]["worker_count"] = "-";
    normalized.push_back(doc.dump());
  }
  if (normalized[0] != normalized[1] || normalized[0] != normalized[2]) {
    detail = "normalized certificates differ across worker counts";
    return false;
  }
  return true;
}

bool criterion10(std::string& detail) {
  // Optimized search == naive triple loop over the whole small grid.
  for (long c1 = 1; c1 <= 4; ++c1) {
    for (long n = 1; n <= 10; ++n) {
      for (long r = 1; r <= n; ++r) {
        ddc::SearchOptions plain;
        plain.bound_variant = ddc::BoundVariant::Plain;
        const auto got = ddc::search_raw(3, static_cast<int>(c1), n, r, plain);
        std::vector<std::array<long, 3>> triples;
        for (const auto& cand : got) {
          triples.push_back({cand.c[0].get_si(), cand.c[1].get_si(), cand.c[2].get_si()});
        }
        if (triples != oracles::naive_search_m3(c1, n, r)) {
          detail = "search/oracle mismatch at c1=" + std::to_string(c1) + ", n=" +
                   std::to_string(n) + ", r=" + std::to_string(r);
          return false;
        }
      }
    }
  }

  // Recurrence oracle equivalence and early-exit soundness.
  std::mt19937_64 rng(20260810);
  for (int trial = 0; trial < 500; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 6);
    std::vector<Int> c;
    for (int i = 0; i < m; ++i) c.emplace_back(static_cast<long>(rng() % 51));
    const long length = static_cast<long>(rng() % 201);
    if (ddc::segre_sequence(ddc::Coefficients(c), length) != oracles::naive_segre(c, length)) {
      detail = "recurrence oracle mismatch";
      return false;
    }
    const long n = 1 + static_cast<long>(rng() % 14);
    const long r = 1 + static_cast<long>(rng() % n);
    const auto verdict = ddc::check_pattern(ddc::Coefficients(c), n, r);
    if (verdict.accepted != oracles::naive_pattern_ok(oracles::naive_segre(c, n), n, r)) {
      detail = "early-exit verdict disagrees with the direct predicate";
      return false;
    }
  }

  // poly_divide round-trip.
  std::uniform_int_distribution<long> coeff(-9, 9);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Int> div_coeffs, dividend_coeffs;
    const int divisor_degree = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < divisor_degree; ++i) div_coeffs.emplace_back(coeff(rng));
    div_coeffs.emplace_back(1);
    const int dividend_degree = static_cast<int>(rng() % 9);
    for (int i = 0; i <= dividend_degree; ++i) dividend_coeffs.emplace_back(coeff(rng));
    const auto dividend = ddc::Polynomial::from_coeffs(dividend_coeffs);
    const auto divisor = ddc::Polynomial::from_coeffs(div_coeffs);
    const auto [quot, rem] = ddc::poly_divide(dividend, divisor);
    auto rebuilt = oracles::poly_mul(divisor.coeffs, quot.coeffs);
    rebuilt.resize(std::max(rebuilt.size(), rem.coeffs.size()), Int(0));
    for (size_t i = 0; i < rem.coeffs.size(); ++i) rebuilt[i] += rem.coeffs[i];
    if (ddc::Polynomial::from_coeffs(rebuilt) != dividend) {
      detail = "poly_divide round-trip failed";
      return false;
    }
  }

  // integer_nth_root.
  for (int trial = 0; trial < 300; ++trial) {
    const unsigned long m = 2 + rng() % 8;
    const long k = 2 + static_cast<long>(rng() % 40);
    const Int power = ddc::pow_int(Int(k), m);
    if (ddc::integer_nth_root(power, m) != Int(k) ||
        ddc::integer_nth_root(power + 1, m).has_value()) {
      detail = "integer_nth_root failed";
      return false;
    }
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: acceptance <defectscan-binary> <work-dir> [--extended]\n");
    return 2;
  }
  g_cli = argv[1];
  g_work = argv[2];
  const bool extended = argc > 3 && std::string(argv[3]) == "--extended";
  fs::create_directories(g_work);

  run_criterion(1, "codim 3, N=10..60 even + propagation covers 10..61, all True", 300,
                criterion1);
  run_criterion(2, "codim 4, N=14..24 all True", 1800, criterion2);
  if (extended) {
    run_criterion(3, "codim 5, N=18 True (extended)", 0, criterion3);
  } else {
    std::printf("SKIP criterion 3: codim 5 N=18 is an extended run (pass --extended)\n");
  }
  run_criterion(4, "reference u-sequences reproduced digit for digit", 1, criterion4);
  run_criterion(5, "classification stays in {4,6} with zero anomalies", 60, criterion5);
  run_criterion(6, "positive-control searches find the reference tuples", 10, criterion6);
  run_criterion(7, "degree bound and degree agree with independent arithmetic", 1,
                criterion7);
  run_criterion(8, "odd-N deduction certificates for 11..201, zero enumeration", 1,
                criterion8);
  run_criterion(9, "certificates byte-identical across 1/2/8 workers", 0, criterion9);
  run_criterion(10, "oracle equivalence and property suites", 0, criterion10);

  if (g_failures > 0) {
    std::printf("%d criterion(s) FAILED\n", g_failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
