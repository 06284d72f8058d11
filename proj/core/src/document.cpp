#include "orthoscalar/document.hpp"

#include <cmath>
#include <cstdint>

#include "orthoscalar/error.hpp"

namespace orthoscalar {

std::string_view to_string(DocumentKind kind) {
  switch (kind) {
    case DocumentKind::quiver: return "quiver";
    case DocumentKind::representation: return "representation";
    case DocumentKind::projection_system: return "projection-system";
    case DocumentKind::rescaling_instance: return "rescaling-instance";
    case DocumentKind::certificate: return "certificate";
    case DocumentKind::report: return "report";
  }
  return "unknown";
}

namespace {

DocumentKind kind_from(const std::string& name) {
  for (DocumentKind k : {DocumentKind::quiver, DocumentKind::representation, DocumentKind::projection_system,
                         DocumentKind::rescaling_instance, DocumentKind::certificate, DocumentKind::report}) {
    if (to_string(k) == name) return k;
  }
  throw Error(ErrorCode::parse_error, "unknown document kind '" + name + "'");
}

[[noreturn]] void grammar(const std::string& what) { throw Error(ErrorCode::parse_error, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) grammar(std::string("missing field '") + key + "'");
  return j.at(key);
}

double as_real(const Json& j) {
  if (!j.is_number()) grammar("expected a number");
  return j.get<double>();
}

std::size_t as_count(const Json& j) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    grammar("expected a nonnegative integer");
  }
  return j.get<std::size_t>();
}

std::string as_string(const Json& j) {
  if (!j.is_string()) grammar("expected a string");
  return j.get<std::string>();
}

void expect_kind(const Document& doc, DocumentKind kind) {
  if (doc.kind != kind) {
    grammar("expected a " + std::string(to_string(kind)) + " document, got " + std::string(to_string(doc.kind)));
  }
}

Json encode_reals(const std::vector<double>& xs) {
  Json out = Json::array();
  for (double x : xs) out.push_back(encode_real(x));
  return out;
}

std::vector<double> decode_reals(const Json& j) {
  if (!j.is_array()) grammar("expected an array of numbers");
  std::vector<double> out;
  for (const Json& x : j) out.push_back(as_real(x));
  return out;
}

// Wraps nlohmann type errors raised while walking a payload.
template <typename F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse_error, e.what());
  }
}

}  // namespace

Json encode_real(double x) {
  constexpr double kExactIntegers = 9007199254740992.0;  // 2^53
  if (std::isfinite(x) && std::trunc(x) == x && std::abs(x) < kExactIntegers && !(x == 0.0 && std::signbit(x))) {
    return static_cast<std::int64_t>(x);
  }
  return x;
}

Json encode_complex(Complex z) { return Json::array({encode_real(z.real()), encode_real(z.imag())}); }

Json encode_matrix(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(encode_complex(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Complex decode_complex(const Json& j) {
  if (!j.is_array() || j.size() != 2) grammar("complex scalars are [re, im] pairs");
  return {as_real(j[0]), as_real(j[1])};
}

Matrix decode_matrix(const Json& j, Eigen::Index rows, Eigen::Index cols) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows) {
    grammar("matrix must have " + std::to_string(rows) + " rows");
  }
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      grammar("matrix row must have " + std::to_string(cols) + " entries");
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = decode_complex(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

Document parse_document(std::string_view text) {
  Json root;
  try {
    root = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw Error(ErrorCode::parse_error,
                "line " + std::to_string(line) + ", column " + std::to_string(column) + ": malformed document");
  }
  if (!root.is_object()) grammar("a document is a JSON object");
  Document doc;
  doc.kind = kind_from(as_string(field(root, "kind")));
  const Json& version = field(root, "version");
  if (!version.is_number_integer()) grammar("version must be an integer");
  doc.version = version.get<int>();
  if (doc.version != kDocumentVersion) {
    throw Error(ErrorCode::version_error, "unsupported document version " + std::to_string(doc.version));
  }
  doc.payload = field(root, "payload");
  return doc;
}

std::string serialize(const Document& doc) {
  Json root;
  root["kind"] = std::string(to_string(doc.kind));
  root["version"] = doc.version;
  root["payload"] = doc.payload;
  return root.dump(2) + "\n";
}

// ---------------------------------------------------------------------------

Json quiver_payload(const Quiver& quiver) {
  Json vertices = Json::array();
  for (const Vertex& v : quiver.vertices()) {
    vertices.push_back({{"id", v.id}, {"parity", v.parity == Parity::odd ? "odd" : "even"}});
  }
  Json arrows = Json::array();
  for (const Arrow& a : quiver.arrows()) {
    arrows.push_back({{"id", a.id}, {"tail", quiver.vertices()[a.tail].id}, {"head", quiver.vertices()[a.head].id}});
  }
  return {{"vertices", vertices}, {"arrows", arrows}};
}

Quiver quiver_from_payload(const Json& payload) {
  return guarded([&] {
    Quiver q;
    const Json& vertices = field(payload, "vertices");
    const Json& arrows = field(payload, "arrows");
    if (!vertices.is_array() || !arrows.is_array()) grammar("vertices and arrows are arrays");
    for (const Json& v : vertices) {
      const std::string parity = as_string(field(v, "parity"));
      if (parity != "even" && parity != "odd") grammar("parity is 'even' or 'odd'");
      q.add_vertex(as_string(field(v, "id")), parity == "odd" ? Parity::odd : Parity::even);
    }
    for (const Json& a : arrows) {
      q.add_arrow(as_string(field(a, "id")), as_string(field(a, "tail")), as_string(field(a, "head")));
    }
    return q;
  });
}

Document to_document(const Quiver& quiver) { return {DocumentKind::quiver, kDocumentVersion, quiver_payload(quiver)}; }

Quiver quiver_from(const Document& doc) {
  expect_kind(doc, DocumentKind::quiver);
  return quiver_from_payload(doc.payload);
}

Document to_document(const Representation& rep) {
  const Quiver& q = rep.quiver();
  Json dims = Json::object();
  for (std::size_t v = 0; v < q.vertex_count(); ++v) dims[q.vertices()[v].id] = rep.dims()[v];
  Json blocks = Json::object();
  for (std::size_t k = 0; k < q.arrow_count(); ++k) blocks[q.arrows()[k].id] = encode_matrix(rep.block(k));
  return {DocumentKind::representation, kDocumentVersion,
          {{"quiver", quiver_payload(q)}, {"dims", dims}, {"blocks", blocks}}};
}

Representation representation_from(const Document& doc) {
  expect_kind(doc, DocumentKind::representation);
  return guarded([&] {
    Quiver q = quiver_from_payload(field(doc.payload, "quiver"));
    const Json& dims_json = field(doc.payload, "dims");
    const Json& blocks_json = field(doc.payload, "blocks");
    DimensionVector dims;
    for (const Vertex& v : q.vertices()) dims.push_back(as_count(field(dims_json, v.id.c_str())));
    std::vector<Matrix> blocks;
    for (const Arrow& a : q.arrows()) {
      blocks.push_back(decode_matrix(field(blocks_json, a.id.c_str()), static_cast<Eigen::Index>(dims[a.head]),
                                     static_cast<Eigen::Index>(dims[a.tail])));
    }
    return Representation(std::move(q), std::move(dims), std::move(blocks));
  });
}

Document to_document(const ProjectionSystem& system) {
  Json projections = Json::array();
  for (const Matrix& p : system.projections) projections.push_back(encode_matrix(p));
  Json payload = {{"ambient_dim", system.ambient_dim}, {"projections", projections}};
  if (system.weights) payload["weights"] = encode_reals(*system.weights);
  if (system.leaf_scales) payload["leaf_scales"] = encode_reals(*system.leaf_scales);
  return {DocumentKind::projection_system, kDocumentVersion, payload};
}

ProjectionSystem projection_system_from(const Document& doc) {
  expect_kind(doc, DocumentKind::projection_system);
  return guarded([&] {
    ProjectionSystem s;
    s.ambient_dim = as_count(field(doc.payload, "ambient_dim"));
    const auto d = static_cast<Eigen::Index>(s.ambient_dim);
    const Json& projections = field(doc.payload, "projections");
    if (!projections.is_array()) grammar("projections is an array of matrices");
    for (const Json& p : projections) s.projections.push_back(decode_matrix(p, d, d));
    if (doc.payload.contains("weights")) s.weights = decode_reals(doc.payload.at("weights"));
    if (doc.payload.contains("leaf_scales")) s.leaf_scales = decode_reals(doc.payload.at("leaf_scales"));
    return s;
  });
}

Document to_document(const RescalingInstance& inst) {
  std::vector<double> a(inst.a.data(), inst.a.data() + inst.a.size());
  std::vector<double> b(inst.b.data(), inst.b.data() + inst.b.size());
  return {DocumentKind::rescaling_instance, kDocumentVersion,
          {{"rows", inst.z.rows()},
           {"cols", inst.z.cols()},
           {"z", encode_matrix(inst.z)},
           {"w", encode_matrix(inst.w)},
           {"a", encode_reals(a)},
           {"b", encode_reals(b)}}};
}

RescalingInstance rescaling_instance_from(const Document& doc) {
  expect_kind(doc, DocumentKind::rescaling_instance);
  return guarded([&] {
    const auto rows = static_cast<Eigen::Index>(as_count(field(doc.payload, "rows")));
    const auto cols = static_cast<Eigen::Index>(as_count(field(doc.payload, "cols")));
    RescalingInstance inst;
    inst.z = decode_matrix(field(doc.payload, "z"), rows, cols);
    inst.w = decode_matrix(field(doc.payload, "w"), rows, cols);
    const auto a = decode_reals(field(doc.payload, "a"));
    const auto b = decode_reals(field(doc.payload, "b"));
    inst.a = Eigen::Map<const RealVector>(a.data(), static_cast<Eigen::Index>(a.size()));
    inst.b = Eigen::Map<const RealVector>(b.data(), static_cast<Eigen::Index>(b.size()));
    return inst;
  });
}

Document to_document(const RigidityCertificate& cert) {
  Json steps = Json::array();
  for (const CertificateStep& s : cert.steps) {
    steps.push_back({{"row", s.row},
                     {"col", s.col},
                     {"rule", std::string(to_string(s.rule))},
                     {"a", encode_real(s.a)},
                     {"b", encode_real(s.b)},
                     {"z", encode_complex(s.z)},
                     {"w", encode_complex(s.w)},
                     {"m", s.m},
                     {"n", s.n},
                     {"k", s.k}});
  }
  return {DocumentKind::certificate, kDocumentVersion,
          {{"nonzero_count", cert.nonzero_count},
           {"max_scalar_deviation", encode_real(cert.max_scalar_deviation)},
           {"max_entry_deviation", encode_real(cert.max_entry_deviation)},
           {"equal", cert.equal},
           {"steps", steps}}};
}

RigidityCertificate certificate_from(const Document& doc) {
  expect_kind(doc, DocumentKind::certificate);
  return guarded([&] {
    RigidityCertificate cert;
    cert.nonzero_count = as_count(field(doc.payload, "nonzero_count"));
    cert.max_scalar_deviation = as_real(field(doc.payload, "max_scalar_deviation"));
    cert.max_entry_deviation = as_real(field(doc.payload, "max_entry_deviation"));
    const Json& equal = field(doc.payload, "equal");
    if (!equal.is_boolean()) grammar("equal is a boolean");
    cert.equal = equal.get<bool>();
    for (const Json& s : field(doc.payload, "steps")) {
      CertificateStep step;
      step.row = as_count(field(s, "row"));
      step.col = as_count(field(s, "col"));
      const std::string rule = as_string(field(s, "rule"));
      bool known = false;
      for (StepRule r : {StepRule::single_row, StepRule::single_column, StepRule::one_per_line, StepRule::inductive}) {
        if (to_string(r) == rule) {
          step.rule = r;
          known = true;
        }
      }
      if (!known) grammar("unknown step rule '" + rule + "'");
      step.a = as_real(field(s, "a"));
      step.b = as_real(field(s, "b"));
      step.z = decode_complex(field(s, "z"));
      step.w = decode_complex(field(s, "w"));
      step.m = as_count(field(s, "m"));
      step.n = as_count(field(s, "n"));
      step.k = as_count(field(s, "k"));
      cert.steps.push_back(step);
    }
    return cert;
  });
}

}  // namespace orthoscalar
