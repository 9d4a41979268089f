#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "moonshine/congruence.hpp"
#include "moonshine/etalab.hpp"
#include "moonshine/module.hpp"

namespace moonshine {

// JSON documents. Integers too large for a double are written as decimal strings
// and both forms are accepted on input. Every writer embeds the tool version.

/// {"name": .., "abelian": "Z/7^4" | {"7": [0, 1]}} or
/// {"name": .., "classes": [{"label", "size", "order", "cycle_type"?}],
///  "characters": [[value per class], ..]}. A character value is an integer or
/// {"n": conductor, "coeffs": [coefficient of zeta_n^k]}.
GroupDescriptor parse_group(const std::string& json_text);
GroupDescriptor load_group(const std::filesystem::path& file);
std::string group_to_json(const GroupDescriptor& g);

/// {"level": N, "terms": {"d": r_d}, "shift": s}.
EtaQuotient parse_eta_quotient(const std::string& json_text);
std::string eta_quotient_to_json(const EtaQuotient& e);

/// A single {"terms": [[N, a]], "modulus": m, "prefix"?: n} or a list of them.
struct CongruenceRequest {
  CongruenceSpec spec;
  std::optional<std::int64_t> prefix;
};
std::vector<CongruenceRequest> parse_congruence_specs(const std::string& json_text);
std::string congruence_certificates_to_json(const std::vector<CongruenceCertificate>& certs);

std::string module_certificate_to_json(const ModuleCertificate& c, std::int64_t rows_precision);
/// Restores rows, flags and limit profile; enough for proportions().
ModuleCertificate parse_module_certificate(const std::string& json_text);

/// assignment.json plus one series file per entry.
void save_assignment(const std::filesystem::path& dir, const GroupDescriptor& g, const TraceAssignment& R);
/// Numeric closures are not restored, so certify() skips the level check.
std::pair<GroupDescriptor, TraceAssignment> load_assignment(const std::filesystem::path& dir);

std::string read_text(const std::filesystem::path& file);

}  // namespace moonshine
