#pragma once

// Versioned, self-describing text documents (JSON) for every artifact:
//
//   { "kind": "<kind>", "version": 1, "payload": { ... } }
//
// Complex scalars are [re, im] pairs, matrices are row-major nested arrays of
// such pairs. Reals are written in shortest round-trip form, integral values
// without a fractional part, so parse(serialize(x)) reproduces every double
// bit for bit. docs/format.md has the full grammar.

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "orthoscalar/numeric.hpp"
#include "orthoscalar/quiver.hpp"
#include "orthoscalar/representation.hpp"
#include "orthoscalar/rigidity.hpp"
#include "orthoscalar/subspaces.hpp"

namespace orthoscalar {

using Json = nlohmann::ordered_json;

enum class DocumentKind { quiver, representation, projection_system, rescaling_instance, certificate, report };

std::string_view to_string(DocumentKind kind);

inline constexpr int kDocumentVersion = 1;

struct Document {
  DocumentKind kind = DocumentKind::report;
  int version = kDocumentVersion;
  Json payload = Json::object();
};

/// Throws parse-error (with line and column) on malformed text or a missing
/// or unknown kind, and version-error on an unsupported version.
Document parse_document(std::string_view text);
std::string serialize(const Document& doc);

Json encode_real(double x);
Json encode_complex(Complex z);
Json encode_matrix(const Matrix& m);
Complex decode_complex(const Json& j);
/// Expects exactly rows x cols entries.
Matrix decode_matrix(const Json& j, Eigen::Index rows, Eigen::Index cols);

Document to_document(const Quiver& quiver);
Document to_document(const Representation& rep);
Document to_document(const ProjectionSystem& system);
Document to_document(const RescalingInstance& inst);
Document to_document(const RigidityCertificate& cert);

/// Each throws parse-error if the document has a different kind or the
/// payload does not match the grammar, and invalid-input if the decoded
/// object violates its own invariants.
Quiver quiver_from(const Document& doc);
Representation representation_from(const Document& doc);
ProjectionSystem projection_system_from(const Document& doc);
RescalingInstance rescaling_instance_from(const Document& doc);
RigidityCertificate certificate_from(const Document& doc);

Json quiver_payload(const Quiver& quiver);
Quiver quiver_from_payload(const Json& payload);

}  // namespace orthoscalar
