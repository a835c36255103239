#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "qzero/suites.hpp"

namespace qzero::io {

// Every number is written as a decimal string at the current reporting
// precision, and object keys keep insertion order, so identical inputs give
// byte-identical documents. Schemas are in docs/report-schemas.md.
using Json = nlohmann::ordered_json;

Json to_json(const Real& x);
Json to_json(const Complex& z);
Json to_json(const CoefficientFamily& fam);
Json to_json(const SeriesTruncation& t);
Json to_json(const ZeroReport& r);
Json to_json(const IdentityReport& r);
Json to_json(const PFVerdict& v);
Json to_json(const SuiteResult& r);

/// Shortest rendering for humans: trailing zeros dropped, "e+00" omitted.
std::string compact(const Real& x);
std::string compact(const Complex& z);

// CSV with a header row; numbers quoted as in JSON.
std::string to_csv(const ZeroReport& r);
std::string to_csv(const std::vector<IdentityReport>& rs);
std::string to_csv(const PFVerdict& v);
std::string to_csv(const SuiteResult& r);

std::string to_text(const ZeroReport& r);
std::string to_text(const std::vector<IdentityReport>& rs);
std::string to_text(const PFVerdict& v);
std::string to_text(const SuiteResult& r);

/// Scatter of the zeros with the disk boundary and the real axis.
std::string render_svg(const ZeroReport& r);
/// Throws InvalidParameter for an empty report, IOFailure if `path` cannot be written.
void emit_svg(const ZeroReport& r, const std::string& path);

}  // namespace qzero::io
