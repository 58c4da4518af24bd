#include <doctest.h>

#include <filesystem>

#include <nlohmann/json.hpp>

#include "ddc/certificate.hpp"
#include "ddc/errors.hpp"

using ddc::BoundVariant;
using ddc::Certificate;
using ddc::SearchOptions;
using ordered_json = nlohmann::ordered_json;

namespace {

SearchOptions default_opts() {
  SearchOptions o;
  o.worker_count = 2;
  return o;
}

Certificate searched_cert_with_candidate() {
  // (14, 4) carries the annotated (4,8,32,64) tuple, so the round-trip
  // covers a populated candidate record.
  return ddc::run_case(ddc::admissible_case(14, 4), default_opts());
}

}  // namespace

TEST_CASE("searched certificate round-trips through JSON") {
  const Certificate cert = searched_cert_with_candidate();
  REQUIRE(cert.verdict);  // annotated candidates do not flip the verdict
  REQUIRE(cert.branches.at(0).candidates.size() == 1);
  CHECK(cert.branches.at(0).candidates.at(0).huh_rejected);
  const ordered_json doc = ddc::certificate_to_json(cert);
  CHECK(doc.at("branches").at(0).at("candidates").at(0).at("huh_rejected") == true);
  CHECK(doc.at("verdict") == "True");
  const Certificate back = ddc::certificate_from_string(doc.dump());
  CHECK(ddc::certificate_to_json(back) == doc);
}

TEST_CASE("certificate JSON carries only decimal strings for numbers") {
  const Certificate cert = searched_cert_with_candidate();
  const ordered_json doc = ddc::certificate_to_json(cert);
  CHECK(doc.at("N").is_string());
  CHECK(doc.at("n").is_string());
  CHECK(doc.at("options").at("worker_count").is_string());
  CHECK(doc.at("branches").at(0).at("enumerated").is_string());
  CHECK(doc.at("wall_time_seconds").is_string());
  CHECK(doc.at("options").at("huh_filter").is_boolean());
  CHECK(doc.at("verdict") == "True");
  CHECK(doc.at("schema_version") == "1");
}

TEST_CASE("candidate evidence serializes with all fields") {
  // Build a certificate around an actual candidate via the raw search.
  SearchOptions o = default_opts();
  const auto candidates = ddc::search_raw(3, 4, 5, 2, o);
  REQUIRE(candidates.size() == 1);
  Certificate cert;
  cert.cs = ddc::admissible_case(12, 3);
  cert.options = o;
  ddc::BranchReport report;
  report.branch = {2, 4};
  report.enumerated = 100;
  report.pruned_early = 99;
  report.candidates = candidates;
  cert.branches.push_back(report);
  cert.verdict = false;

  const ordered_json doc = ddc::certificate_to_json(cert);
  const auto& cand = doc.at("branches").at(0).at("candidates").at(0);
  CHECK(cand.at("c") == ordered_json::array({"4", "8", "8"}));
  CHECK(cand.at("degree") == "21");
  CHECK(cand.at("s_evidence").size() == 6);
  CHECK(cand.at("delta_evidence").size() == 6);
  CHECK(cand.at("huh_rejected") == false);
  CHECK(doc.at("verdict") == "False");

  const Certificate back = ddc::certificate_from_string(doc.dump());
  CHECK(ddc::certificate_to_json(back) == doc);
}

TEST_CASE("deduced certificate round-trips and records the chain") {
  const Certificate cert = ddc::make_deduced_certificate(11, default_opts());
  CHECK(cert.resolution == "deduced-theorem51");
  CHECK(cert.verdict);
  CHECK(cert.branches.empty());
  REQUIRE(cert.deduction.has_value());
  CHECK(cert.deduction->pattern_index == 9);

  const ordered_json doc = ddc::certificate_to_json(cert);
  CHECK(doc.at("deduction").at("pattern_index") == "9");
  CHECK(doc.at("deduction").at("forced_defect") == "2");
  const Certificate back = ddc::certificate_from_string(doc.dump());
  CHECK(ddc::certificate_to_json(back) == doc);
}

TEST_CASE("propagated certificate requires a valid True source") {
  const Certificate source = ddc::run_case(ddc::admissible_case(10, 3), default_opts());
  REQUIRE(source.verdict);
  const Certificate cert = ddc::make_propagated_certificate(11, 3, source, default_opts());
  CHECK(cert.resolution == "propagated-from(10)");
  CHECK(cert.propagated_from == 10);
  CHECK(cert.verdict);

  const ordered_json doc = ddc::certificate_to_json(cert);
  CHECK(doc.at("propagated_from") == "10");
  const Certificate back = ddc::certificate_from_string(doc.dump());
  CHECK(ddc::certificate_to_json(back) == doc);

  // Wrong source case or parity is rejected.
  CHECK_THROWS_AS(ddc::make_propagated_certificate(12, 3, source, default_opts()),
                  ddc::ConstraintError);
  Certificate false_source = source;
  false_source.verdict = false;
  CHECK_THROWS_AS(ddc::make_propagated_certificate(11, 3, false_source, default_opts()),
                  ddc::ConstraintError);
}

TEST_CASE("certificate files are written atomically and read back") {
  const auto dir = std::filesystem::temp_directory_path() / "ddc_cert_test";
  std::filesystem::create_directories(dir);
  const Certificate cert = ddc::make_deduced_certificate(13, default_opts());
  const auto path = dir / ddc::certificate_file_name(13, 3);
  ddc::write_certificate_file(cert, path);
  CHECK(std::filesystem::exists(path));
  CHECK_FALSE(std::filesystem::exists(path.string() + ".tmp"));
  const Certificate back = ddc::read_certificate_file(path);
  CHECK(ddc::certificate_to_json(back) == ddc::certificate_to_json(cert));
  std::filesystem::remove_all(dir);
}

TEST_CASE("csv summary row layout") {
  const Certificate cert = ddc::make_deduced_certificate(11, default_opts());
  CHECK(ddc::csv_header() == "N,m,resolution,verdict,candidates,enumerated,seconds");
  const std::string row = ddc::csv_row(cert);
  CHECK(row.substr(0, 30) == "11,3,deduced-theorem51,True,0,");
}

TEST_CASE("certificate file name is zero padded") {
  CHECK(ddc::certificate_file_name(10, 3) == "cert_N0010_m3.json");
  CHECK(ddc::certificate_file_name(201, 3) == "cert_N0201_m3.json");
}
