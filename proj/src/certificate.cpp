#include "ddc/certificate.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "ddc/errors.hpp"

namespace ddc {

using ordered_json = nlohmann::ordered_json;

namespace {

std::string dec(uint64_t v) { return std::to_string(v); }
std::string dec(long v) { return std::to_string(v); }
std::string dec(int v) { return std::to_string(v); }

std::string seconds_string(double seconds) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", seconds);
  return buf;
}

ordered_json int_list(const std::vector<Int>& values) {
  ordered_json arr = ordered_json::array();
  for (const Int& v : values) arr.push_back(to_decimal(v));
  return arr;
}

std::vector<Int> int_list_from(const ordered_json& arr, const char* what) {
  if (!arr.is_array()) throw std::invalid_argument(std::string(what) + " must be an array");
  std::vector<Int> out;
  out.reserve(arr.size());
  for (const auto& item : arr) out.push_back(from_decimal(item.get<std::string>()));
  return out;
}

long long_field(const ordered_json& doc, const char* key) {
  return std::stol(doc.at(key).get<std::string>());
}

uint64_t u64_field(const ordered_json& doc, const char* key) {
  return std::stoull(doc.at(key).get<std::string>());
}

}  // namespace

ordered_json certificate_to_json(const Certificate& cert) {
  ordered_json doc;
  doc["schema_version"] = "1";
  doc["N"] = dec(cert.cs.N);
  doc["m"] = dec(cert.cs.m);
  doc["n"] = dec(cert.cs.n);
  doc["resolution"] = cert.resolution;
  doc["options"] = {
      {"bound_variant", to_string(cert.options.bound_variant)},
      {"huh_filter", cert.options.huh_filter},
      {"worker_count", dec(cert.options.worker_count)},
  };
  ordered_json branches = ordered_json::array();
  for (const BranchReport& report : cert.branches) {
    ordered_json candidates = ordered_json::array();
    for (const Candidate& cand : report.candidates) {
      ordered_json entry;
      entry["c"] = int_list(cand.c);
      entry["s_evidence"] = int_list(cand.s_evidence);
      entry["degree"] = to_decimal(cand.degree);
      entry["delta_evidence"] = int_list(cand.delta_evidence);
      entry["huh_rejected"] = cand.huh_rejected;
      if (cand.rejected_by) entry["rejected_by"] = *cand.rejected_by;
      candidates.push_back(std::move(entry));
    }
    branches.push_back(ordered_json{
        {"r", dec(report.branch.r)},
        {"c1", dec(report.branch.c1)},
        {"enumerated", dec(report.enumerated)},
        {"pruned_early", dec(report.pruned_early)},
        {"candidates", std::move(candidates)},
    });
  }
  doc["branches"] = std::move(branches);
  if (cert.deduction) {
    doc["deduction"] = ordered_json{
        {"n", dec(cert.deduction->n)},
        {"forced_defect", dec(cert.deduction->r)},
        {"pattern_index", dec(cert.deduction->pattern_index)},
        {"pattern_index_excluded", cert.deduction->excluded},
    };
  }
  if (cert.propagated_from) {
    doc["propagated_from"] = dec(*cert.propagated_from);
  }
  doc["verdict"] = cert.verdict ? "True" : "False";
  doc["wall_time_seconds"] = seconds_string(cert.wall_time_seconds);
  doc["tool_version"] = cert.tool_version;
  return doc;
}

Certificate certificate_from_json(const ordered_json& doc) {
  Certificate cert;
  if (doc.at("schema_version").get<std::string>() != "1") {
    throw std::invalid_argument("unknown certificate schema_version");
  }
  cert.cs.N = static_cast<int>(long_field(doc, "N"));
  cert.cs.m = static_cast<int>(long_field(doc, "m"));
  cert.cs.n = static_cast<int>(long_field(doc, "n"));
  cert.resolution = doc.at("resolution").get<std::string>();
  const auto& opts = doc.at("options");
  cert.options.bound_variant =
      bound_variant_from_string(opts.at("bound_variant").get<std::string>());
  cert.options.huh_filter = opts.at("huh_filter").get<bool>();
  cert.options.worker_count = static_cast<int>(long_field(opts, "worker_count"));
  for (const auto& branch_doc : doc.at("branches")) {
    BranchReport report;
    report.branch.r = static_cast<int>(long_field(branch_doc, "r"));
    report.branch.c1 = static_cast<int>(long_field(branch_doc, "c1"));
    report.enumerated = u64_field(branch_doc, "enumerated");
    report.pruned_early = u64_field(branch_doc, "pruned_early");
    for (const auto& cand_doc : branch_doc.at("candidates")) {
      Candidate cand;
      cand.c = int_list_from(cand_doc.at("c"), "candidate c");
      cand.s_evidence = int_list_from(cand_doc.at("s_evidence"), "s_evidence");
      cand.degree = from_decimal(cand_doc.at("degree").get<std::string>());
      cand.delta_evidence = int_list_from(cand_doc.at("delta_evidence"), "delta_evidence");
      cand.huh_rejected = cand_doc.at("huh_rejected").get<bool>();
      if (cand_doc.contains("rejected_by")) {
        cand.rejected_by = cand_doc.at("rejected_by").get<std::string>();
      }
      cand.n = cert.cs.n;
      cand.r = report.branch.r;
      report.candidates.push_back(std::move(cand));
    }
    cert.branches.push_back(std::move(report));
  }
  if (doc.contains("deduction")) {
    OddCaseDeduction d;
    d.N = cert.cs.N;
    d.n = static_cast<int>(long_field(doc.at("deduction"), "n"));
    d.r = static_cast<int>(long_field(doc.at("deduction"), "forced_defect"));
    d.pattern_index = long_field(doc.at("deduction"), "pattern_index");
    d.excluded = doc.at("deduction").at("pattern_index_excluded").get<bool>();
    cert.deduction = d;
  }
  if (doc.contains("propagated_from")) {
    cert.propagated_from = static_cast<int>(long_field(doc, "propagated_from"));
  }
  cert.verdict = doc.at("verdict").get<std::string>() == "True";
  cert.wall_time_seconds = std::stod(doc.at("wall_time_seconds").get<std::string>());
  cert.tool_version = doc.at("tool_version").get<std::string>();
  return cert;
}

std::string certificate_to_string(const Certificate& cert) {
  return certificate_to_json(cert).dump(2) + "\n";
}

Certificate certificate_from_string(const std::string& text) {
  return certificate_from_json(ordered_json::parse(text));
}

void write_certificate_file(const Certificate& cert, const std::filesystem::path& path) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  try {
    {
      std::ofstream out(tmp);
      if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
      out << certificate_to_string(cert);
      if (!out.good()) throw std::runtime_error("failed writing " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
  } catch (...) {
    std::error_code ignore;
    std::filesystem::remove(tmp, ignore);
    throw;
  }
}

Certificate read_certificate_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open certificate " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return certificate_from_string(text);
}

std::string certificate_file_name(int N, int m) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "cert_N%04d_m%d.json", N, m);
  return buf;
}

std::string csv_header() { return "N,m,resolution,verdict,candidates,enumerated,seconds"; }

std::string csv_row(const Certificate& cert) {
  uint64_t enumerated = 0;
  for (const BranchReport& report : cert.branches) {
    enumerated += report.enumerated;
  }
  return dec(cert.cs.N) + "," + dec(cert.cs.m) + "," + cert.resolution + "," +
         (cert.verdict ? "True" : "False") + "," + dec(cert.surviving_candidates()) +
         "," + dec(enumerated) + "," + seconds_string(cert.wall_time_seconds);
}

Certificate make_deduced_certificate(int N, const SearchOptions& options) {
  const OddCaseDeduction deduction = deduce_odd_case(N);
  Certificate cert;
  cert.cs = admissible_case(N, 3);
  cert.resolution = "deduced-theorem51";
  cert.options = options;
  cert.deduction = deduction;
  cert.verdict = true;  // the forced pattern index is never classifiable
  return cert;
}

Certificate make_propagated_certificate(int N, int m, const Certificate& source,
                                        const SearchOptions& options) {
  if (source.cs.N != N - 1 || source.cs.m != m) {
    throw ConstraintError("propagation source must be the (N-1, m) case");
  }
  if (!source.verdict) {
    throw ConstraintError("propagation requires a verdict-True source certificate");
  }
  if ((N - m) % 2 != 0) {
    throw ConstraintError(
        "propagation requires even target dimension N - m (defect would not be >= 2)");
  }
  Certificate cert;
  cert.cs = admissible_case(N, m);
  cert.resolution = "propagated-from(" + std::to_string(N - 1) + ")";
  cert.options = options;
  cert.propagated_from = N - 1;
  cert.verdict = true;
  return cert;
}

}  // namespace ddc
