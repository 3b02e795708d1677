#pragma once

#include "rescon/nussbaum.hpp"
#include "rescon/scenario.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

namespace rescon {

/// Parses a scenario document. Unknown keys and wrong types throw ParseError
/// naming the JSON path; no semantic validation is done here.
Scenario parse_scenario(std::string_view json_text);

/// Reads a file, or the built-in document when `path` is "builtin:four-agent".
Scenario load_scenario(const std::string& path_or_builtin);

/// parse_scenario followed by validate_scenario (which throws ValidationError).
Scenario parse_and_validate(std::string_view json_text);

/// Canonical serialization: fixed key order, every field written.
std::string dump_scenario(const Scenario& s, int indent = 2);

/// FNV-1a 64 of the compact canonical document, as 16 hex digits.
std::string scenario_hash(const Scenario& s);

std::string dump_nussbaum(const NussbaumSpec& spec);
NussbaumSpec parse_nussbaum(std::string_view json_text);

/// Candidate for certification: a family member, or the raw
/// nu^power * trig(omega nu) catalog entry.
using NussbaumCandidate = std::variant<NussbaumSpec, RawFunction>;

struct VerifyRequest {
    NussbaumCandidate candidate;
    int max_index = 12;
};

/// Accepts {"spec": {...}}, {"raw": {"power", "omega", "variant"}}, or a bare
/// spec object, each with an optional "max_index".
VerifyRequest parse_verify_request(std::string_view json_text);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace rescon
