#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "ddc/search.hpp"

namespace ddc {

// Certificates are one JSON document per case. Every numeric value is
// serialized as a decimal string (sequence terms and delta invariants exceed
// both machine words and double precision, and mixed representations invite
// lossy readers); booleans stay JSON booleans.
nlohmann::ordered_json certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(const nlohmann::ordered_json& doc);

std::string certificate_to_string(const Certificate& cert);
Certificate certificate_from_string(const std::string& text);

// Atomic write: the document lands under its final name only when complete.
void write_certificate_file(const Certificate& cert, const std::filesystem::path& path);
Certificate read_certificate_file(const std::filesystem::path& path);

// Canonical per-case file name, e.g. cert_N0014_m4.json.
std::string certificate_file_name(int N, int m);

// Summary CSV row: N,m,resolution,verdict,candidates,enumerated,seconds.
std::string csv_header();
std::string csv_row(const Certificate& cert);

// Certificate for an odd-N codimension-3 case resolved without enumeration.
Certificate make_deduced_certificate(int N, const SearchOptions& options);

// Certificate for a case resolved from a verdict-True certificate of
// (N-1, m); requires N - m even and a True source for (N-1, m).
Certificate make_propagated_certificate(int N, int m, const Certificate& source,
                                        const SearchOptions& options);

}  // namespace ddc
