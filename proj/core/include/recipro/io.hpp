#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "recipro/dist.hpp"
#include "recipro/harness.hpp"
#include "recipro/inference.hpp"
#include "recipro/mixture.hpp"
#include "recipro/rational.hpp"

namespace recipro::io {

inline constexpr int kSchemaVersion = 1;

/// Library version string.
std::string_view version();

/// Throws ValidationError when the file cannot be read.
std::string read_file(const std::filesystem::path& path);

/// FNV-1a, 64 bit, as 16 lowercase hex digits.
std::string digest(std::string_view bytes);

/// {"atoms": [{"x": ..., "p": ...}]}. Values and weights may be "num/den"
/// strings, exact decimal strings, or JSON numbers (read through their
/// shortest decimal form). The law is centred at its exact mean.
ZeroMeanDiscreteDist parse_dist(std::string_view json_text);
std::string dist_to_json(const ZeroMeanDiscreteDist& dist);

/// One value per line; blank lines are skipped and a non-numeric first line
/// is taken as a header.
std::vector<Rational> parse_sample_csv(std::string_view text);

std::string mixture_to_json(const MixtureDecomposition& mix);
MixtureDecomposition parse_mixture(std::string_view json_text);

std::string test_result_to_json(const TestResult& result);
std::string interval_to_json(const ConfidenceInterval& ci);
std::string reports_to_json(const std::vector<VerificationReport>& reports);

/// Verification config:
///   {"checks": [{"id", "inequality": "tail"|"moment"|"sy-tail"|"rademacher", ...}]}
/// Laws are given inline as "dists" (a list), or as "dist" with a replication
/// count "n". A law may also be a path to a distribution file, resolved
/// against `base_dir`.
std::vector<CheckSpec> parse_verify_config(std::string_view json_text,
                                           const std::filesystem::path& base_dir = {});

/// Provenance attached to every CLI output. Wall time is deliberately not
/// part of it so that reruns are byte-identical.
struct RunManifest {
  std::string command;
  std::map<std::string, std::string> flags;
  std::optional<std::uint64_t> seed;
  std::map<std::string, std::string> input_digests;
};

/// {"schema_version", "manifest", "result"} with `result_json` embedded.
std::string wrap_output(const RunManifest& manifest, std::string_view result_json);

}  // namespace recipro::io
