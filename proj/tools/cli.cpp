#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "orthoscalar/document.hpp"
#include "orthoscalar/error.hpp"
#include "orthoscalar/morphisms.hpp"
#include "orthoscalar/quiver.hpp"
#include "orthoscalar/representation.hpp"
#include "orthoscalar/rigidity.hpp"
#include "orthoscalar/subspaces.hpp"
#include "orthoscalar/synthesis.hpp"

namespace orthoscalar::cli {

namespace {

std::string_view to_string(Status s) {
  switch (s) {
    case Status::holds: return "holds";
    case Status::fails: return "fails";
    case Status::invalid_input: return "invalid-input";
    case Status::degenerate: return "degenerate";
  }
  return "unknown";
}

Status status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::numerical_degeneracy:
    case ErrorCode::rigidity_violation:
    case ErrorCode::stage_failure:
      return Status::degenerate;
    case ErrorCode::precondition_zero_line:
    case ErrorCode::precondition_lengths:
    case ErrorCode::precondition_relation:
    case ErrorCode::infeasible:
    case ErrorCode::infeasible_sign:
    case ErrorCode::not_in_k:
    case ErrorCode::not_a_morphism:
    case ErrorCode::inconsistent_input:
      return Status::fails;
    default:
      return Status::invalid_input;
  }
}

struct Report {
  std::string command;
  Status status = Status::holds;
  std::optional<std::string> error;
  Json results = Json::object();
  std::optional<Document> artifact;
};

struct Context {
  TolerancePolicy tol;
  std::uint64_t seed = 0;
  std::istream* in = nullptr;
  std::ostream* out = nullptr;
};

std::string read_input(const std::string& path, Context& ctx) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(*ctx.in), std::istreambuf_iterator<char>());
  }
  std::ifstream file(path);
  if (!file) throw Error(ErrorCode::invalid_input, "cannot open '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>());
}

Document read_document(const std::string& path, Context& ctx) { return parse_document(read_input(path, ctx)); }

Json character_json(const Quiver& q, const Character& chi) {
  Json out = Json::object();
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    out[q.vertices()[v].id] = chi[v] ? encode_real(*chi[v]) : Json(nullptr);
  }
  return out;
}

Json dims_json(const Quiver& q, const DimensionVector& dims) {
  Json out = Json::object();
  for (std::size_t v = 0; v < q.vertex_count(); ++v) out[q.vertices()[v].id] = dims[v];
  return out;
}

Json morphism_json(const Quiver& q, const Morphism& c) {
  Json out = Json::object();
  for (std::size_t v = 0; v < q.vertex_count(); ++v) out[q.vertices()[v].id] = encode_matrix(c.maps[v]);
  return out;
}

Category parse_category(const std::string& name) {
  if (name == "plain") return Category::plain;
  if (name == "star") return Category::star;
  throw Error(ErrorCode::invalid_input, "category is 'plain' or 'star'");
}

double parse_real(const std::string& text) {
  try {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return std::stod(text);
    return std::stod(text.substr(0, slash)) / std::stod(text.substr(slash + 1));
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::invalid_input, "cannot read number '" + text + "'");
  }
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

// ---------------------------------------------------------------------------
// Commands

Report cmd_check(Context& ctx, const std::string& path, bool character_only) {
  const Representation rep = representation_from(read_document(path, ctx));
  const OrthoscalarReport os = orthoscalar_check(rep, ctx.tol);
  Report r;
  r.status = os.is_orthoscalar ? Status::holds : Status::fails;
  r.results["orthoscalar"] = os.is_orthoscalar;
  r.results["character"] = character_json(rep.quiver(), os.character);
  if (!character_only) {
    r.results["worst_residual"] = encode_real(os.worst_residual);
    r.results["residuals"] = character_json(rep.quiver(), os.residuals);
  }
  return r;
}

Report cmd_hom(Context& ctx, const std::string& source, const std::string& target, const std::string& category,
               bool with_basis) {
  const Representation a = representation_from(read_document(source, ctx));
  const Representation b = target.empty() ? a : representation_from(read_document(target, ctx));
  const HomSpace space = hom_space(a, b, parse_category(category), ctx.tol);
  Report r;
  r.results["category"] = category;
  r.results["dimension"] = space.dimension();
  if (with_basis) {
    Json basis = Json::array();
    for (const Morphism& c : space.basis) basis.push_back(morphism_json(a.quiver(), c));
    r.results["basis"] = basis;
  }
  return r;
}

Report cmd_schur(Context& ctx, const std::string& path, const std::string& category) {
  const Representation rep = representation_from(read_document(path, ctx));
  const Category cat = parse_category(category);
  const bool schur = is_schur(rep, cat, ctx.tol);
  Report r;
  r.status = schur ? Status::holds : Status::fails;
  r.results["category"] = category;
  r.results["schur"] = schur;
  r.results["end_dimension"] = hom_space(rep, rep, cat, ctx.tol).dimension();
  return r;
}

Report cmd_decompose(Context& ctx, const std::string& path) {
  const Representation rep = representation_from(read_document(path, ctx));
  const DecompositionResult d = decompose(rep, ctx.seed, ctx.tol);
  Report r;
  r.results["summand_count"] = d.summands.size();
  Json dims = Json::array();
  Json summands = Json::array();
  for (const Representation& s : d.summands) {
    dims.push_back(dims_json(rep.quiver(), s.dims()));
    summands.push_back(to_document(s).payload);
  }
  r.results["summand_dims"] = dims;
  r.results["orthogonality_residual"] = encode_real(d.orthogonality_residual);
  r.results["reassembly_residual"] = encode_real(d.reassembly_residual);
  r.results["summands"] = summands;
  return r;
}

Report cmd_equiv(Context& ctx, const std::string& first, const std::string& second) {
  const Representation a = representation_from(read_document(first, ctx));
  const Representation b = representation_from(read_document(second, ctx));
  const EquivalenceResult e = are_equivalent_star(a, b, ctx.seed, ctx.tol);
  Report r;
  switch (e.status) {
    case EquivalenceStatus::equivalent:
      r.status = Status::holds;
      r.results["equivalence"] = "equivalent";
      break;
    case EquivalenceStatus::not_equivalent:
      r.status = Status::fails;
      r.results["equivalence"] = "not-equivalent";
      break;
    case EquivalenceStatus::equivalent_without_witness:
      r.status = Status::degenerate;
      r.results["equivalence"] = "equivalent-without-witness";
      break;
  }
  r.results["witness_residual"] = encode_real(e.witness_residual);
  if (e.witness) r.results["witness"] = morphism_json(a.quiver(), Morphism{*e.witness});
  return r;
}

Report cmd_to_projections(Context& ctx, const std::string& path) {
  const Representation rep = representation_from(read_document(path, ctx));
  const ProjectionSystem s = functor_F(rep, ctx.tol);
  const SystemReport check = validate_system(s, ctx.tol);
  Report r;
  r.results["subspaces"] = s.size();
  r.results["ambient_dim"] = s.ambient_dim;
  r.results["subspace_dims"] = check.subspace_dims;
  r.results["orthoscalar"] = s.weights.has_value();
  if (s.weights) {
    Json w = Json::array();
    for (double x : *s.weights) w.push_back(encode_real(x));
    r.results["weights"] = w;
  }
  r.artifact = to_document(s);
  return r;
}

Report cmd_from_projections(Context& ctx, const std::string& path) {
  const ProjectionSystem s = projection_system_from(read_document(path, ctx));
  const Representation rep = functor_G(s, ctx.tol);
  const OrthoscalarReport os = orthoscalar_check(rep, ctx.tol);
  Report r;
  r.results["dims"] = dims_json(rep.quiver(), rep.dims());
  r.results["orthoscalar"] = os.is_orthoscalar;
  r.results["character"] = character_json(rep.quiver(), os.character);
  r.artifact = to_document(rep);
  return r;
}

Report cmd_weights(Context& ctx, const std::string& path) {
  const ProjectionSystem s = projection_system_from(read_document(path, ctx));
  validate_system(ProjectionSystem{s.ambient_dim, s.projections, std::nullopt, std::nullopt}, ctx.tol);
  const WeightSolution w = solve_weights(s, ctx.tol);
  Report r;
  Json weights = Json::array();
  for (double x : w.weights) weights.push_back(encode_real(x));
  r.results["weights"] = weights;
  r.results["residual"] = encode_real(w.residual);
  r.results["unique"] = w.unique;
  return r;
}

Report cmd_synthesize(Context& ctx, const std::string& quiver_path, std::size_t star, const std::string& dims_text,
                      const std::string& chi_text, std::size_t max_iterations, double target) {
  Quiver q;
  if (!quiver_path.empty()) {
    q = quiver_from(read_document(quiver_path, ctx));
  } else if (star > 0) {
    q = star_quiver(star);
  } else {
    throw Error(ErrorCode::invalid_input, "synthesize needs --quiver or --star");
  }
  const auto dims_items = split_list(dims_text);
  const auto chi_items = split_list(chi_text);
  if (dims_items.size() != q.vertex_count() || chi_items.size() != q.vertex_count()) {
    throw Error(ErrorCode::invalid_input, "--dims and --chi need one entry per vertex, in quiver order");
  }
  DimensionVector dims;
  Character chi;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    const double d = parse_real(dims_items[v]);
    if (d < 0 || d != static_cast<double>(static_cast<std::size_t>(d))) {
      throw Error(ErrorCode::invalid_input, "dimensions are nonnegative integers");
    }
    dims.push_back(static_cast<std::size_t>(d));
    if (chi_items[v] == "-") {
      chi.push_back(std::nullopt);
    } else {
      chi.push_back(parse_real(chi_items[v]));
    }
  }
  SynthesisOptions opts{max_iterations, target, ctx.seed};
  const SynthesisResult res = synthesize(q, dims, chi, opts, ctx.tol);
  Report r;
  r.status = res.converged ? Status::holds : Status::degenerate;
  r.results["converged"] = res.converged;
  r.results["residual"] = encode_real(res.residual);
  r.results["iterations"] = res.iterations;
  if (!res.converged) r.results["non_convergence"] = "iteration cap reached; best iterate returned";
  r.artifact = to_document(res.representation);
  return r;
}

Report cmd_rigidity(Context& ctx, const std::string& path) {
  const RescalingInstance inst = rescaling_instance_from(read_document(path, ctx));
  const RigidityCertificate cert = lemma1_certify(inst, ctx.tol);
  Report r;
  r.status = cert.equal ? Status::holds : Status::fails;
  r.results["steps"] = cert.steps.size();
  r.results["nonzero_count"] = cert.nonzero_count;
  r.results["max_scalar_deviation"] = encode_real(cert.max_scalar_deviation);
  r.results["max_entry_deviation"] = encode_real(cert.max_entry_deviation);
  r.results["equal"] = cert.equal;
  r.artifact = to_document(cert);
  return r;
}

Report cmd_trace(Context& ctx, const std::string& path) {
  const Representation rep = representation_from(read_document(path, ctx));
  const HomSpace end = hom_space(rep, rep, Category::plain, ctx.tol);
  Rng rng(ctx.seed);
  const Morphism c = random_element(end, rng);
  const TraceReport t = theorem1_trace(rep, c, ctx.seed, ctx.tol);
  Report r;
  r.status = t.verdict_scalar ? Status::holds : Status::fails;
  r.results["plain_end_dimension"] = end.dimension();
  r.results["star_end_dimension"] = t.star_end_dimension;
  r.results["shift"] = encode_complex(t.shift);
  Json stages = Json::array();
  for (const TraceStage& s : t.stages) {
    stages.push_back({{"id", s.id}, {"identity", s.identity}, {"residual", encode_real(s.residual)}});
  }
  r.results["stages"] = stages;
  r.results["rigidity_steps"] = t.certificate.steps.size();
  r.results["verdict_scalar"] = t.verdict_scalar;
  if (t.verdict_scalar) r.results["scalar"] = encode_complex(t.scalar);
  r.results["max_residual"] = encode_real(t.max_residual);
  r.artifact = to_document(t.certificate);
  return r;
}

Report cmd_loop_demo(Context& ctx) {
  const Remark6Report d = remark6_demo(ctx.tol);
  Report r;
  r.status = d.holds ? Status::holds : Status::fails;
  r.results["T"] = encode_matrix(d.rep.block(0));
  r.results["gram_sum"] = encode_matrix(d.gram_sum);
  r.results["gram_residual"] = encode_real(d.gram_residual);
  r.results["A"] = encode_matrix(d.endo);
  r.results["AT"] = encode_matrix(d.endo_times_t);
  r.results["TA"] = encode_matrix(d.t_times_endo);
  r.results["plain_end_dimension"] = d.plain_end_dimension;
  r.results["star_end_dimension"] = d.star_end_dimension;
  r.results["A_in_plain_end_residual"] = encode_real(d.span_residual);
  r.results["A_invertible"] = d.endo_invertible;
  r.results["A_scalar"] = d.endo_scalar;
  return r;
}

// ---------------------------------------------------------------------------
// Output

std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

void render_text(const Report& r, const Context& ctx, std::ostream& os) {
  os << "command: " << r.command << "\n";
  os << "status: " << to_string(r.status) << " (exit " << static_cast<int>(r.status) << ")\n";
  if (r.error) os << "error: " << *r.error << "\n";
  os << "tolerance: rank_rel_tol=" << ctx.tol.rank_rel_tol << " residual_abs_tol=" << ctx.tol.residual_abs_tol << "\n";
  os << "seed: " << ctx.seed << "\n";
  for (const auto& [key, value] : r.results.items()) {
    if (key == "summands" || key == "basis" || key == "witness") continue;
    if (key == "stages") {
      os << "stages:\n";
      for (const Json& s : value) {
        os << "  " << s["id"].get<std::string>() << " [" << s["identity"].get<std::string>()
           << "] residual=" << s["residual"].dump() << "\n";
      }
      continue;
    }
    os << key << ": " << scalar_text(value) << "\n";
  }
}

Document report_document(const Report& r, const Context& ctx) {
  Json payload;
  payload["command"] = r.command;
  payload["status"] = std::string(to_string(r.status));
  payload["exit_code"] = static_cast<int>(r.status);
  if (r.error) payload["error"] = *r.error;
  payload["tolerance"] = {{"rank_rel_tol", encode_real(ctx.tol.rank_rel_tol)},
                          {"residual_abs_tol", encode_real(ctx.tol.residual_abs_tol)}};
  payload["seed"] = ctx.seed;
  payload["results"] = r.results;
  if (r.artifact) {
    payload["artifact"] = {{"kind", std::string(orthoscalar::to_string(r.artifact->kind))},
                           {"version", r.artifact->version},
                           {"payload", r.artifact->payload}};
  }
  return {DocumentKind::report, kDocumentVersion, payload};
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Orthoscalar quiver representation toolkit", "oscalar"};
  app.require_subcommand(1);
  app.fallthrough();

  Context ctx;
  ctx.in = &in;
  ctx.out = &out;
  std::string format = "text";
  app.add_option("--tol", ctx.tol.rank_rel_tol, "relative rank / orthoscalarity tolerance")->capture_default_str();
  app.add_option("--residual-tol", ctx.tol.residual_abs_tol, "absolute residual tolerance")->capture_default_str();
  app.add_option("--seed", ctx.seed, "seed for every randomized step")->capture_default_str();
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"text", "doc"}))->capture_default_str();

  std::string input, second, category = "plain", output, quiver_path, dims_text, chi_text;
  bool with_basis = false;
  std::size_t star = 0, max_iterations = 10000;
  double target = 1e-9;
  std::function<Report()> action;

  const auto add = [&](const char* name, const char* help) { return app.add_subcommand(name, help); };
  const auto output_option = [&](CLI::App* sub) {
    sub->add_option("-o,--output", output, "write the produced document here ('-' for stdout)");
  };

  auto* check = add("check", "test orthoscalarity");
  check->add_option("input", input)->required();
  check->callback([&] { action = [&] { return cmd_check(ctx, input, false); }; });

  auto* character = add("character", "print the character of an orthoscalar representation");
  character->add_option("input", input)->required();
  character->callback([&] { action = [&] { return cmd_check(ctx, input, true); }; });

  auto* hom = add("hom", "dimension (and basis) of Hom(source, target)");
  hom->add_option("source", input)->required();
  hom->add_option("target", second)->required();
  hom->add_option("--category", category)->check(CLI::IsMember({"plain", "star"}));
  hom->add_flag("--basis", with_basis);
  hom->callback([&] { action = [&] { return cmd_hom(ctx, input, second, category, with_basis); }; });

  auto* end = add("end", "dimension (and basis) of End(T)");
  end->add_option("input", input)->required();
  end->add_option("--category", category)->check(CLI::IsMember({"plain", "star"}));
  end->add_flag("--basis", with_basis);
  end->callback([&] { action = [&] { return cmd_hom(ctx, input, "", category, with_basis); }; });

  auto* schur = add("schur", "exit 0 iff End(T) is one-dimensional");
  schur->add_option("input", input)->required();
  schur->add_option("--category", category)->check(CLI::IsMember({"plain", "star"}));
  schur->callback([&] { action = [&] { return cmd_schur(ctx, input, category); }; });

  auto* dec = add("decompose", "orthogonal decomposition into star-indecomposables");
  dec->add_option("input", input)->required();
  dec->callback([&] { action = [&] { return cmd_decompose(ctx, input); }; });

  auto* equiv = add("equiv", "unitary equivalence with witness");
  equiv->add_option("first", input)->required();
  equiv->add_option("second", second)->required();
  equiv->callback([&] { action = [&] { return cmd_equiv(ctx, input, second); }; });

  auto* to_proj = add("to-projections", "star-quiver representation to projection system");
  to_proj->add_option("input", input)->required();
  output_option(to_proj);
  to_proj->callback([&] { action = [&] { return cmd_to_projections(ctx, input); }; });

  auto* from_proj = add("from-projections", "weighted projection system to star-quiver representation");
  from_proj->add_option("input", input)->required();
  output_option(from_proj);
  from_proj->callback([&] { action = [&] { return cmd_from_projections(ctx, input); }; });

  auto* weights = add("weights", "solve sum alpha_i P_i = I");
  weights->add_option("input", input)->required();
  weights->callback([&] { action = [&] { return cmd_weights(ctx, input); }; });

  auto* synth = add("synthesize", "build an orthoscalar representation for (quiver, dims, chi)");
  synth->add_option("--quiver", quiver_path, "quiver document");
  synth->add_option("--star", star, "use the star quiver with this many leaves");
  synth->add_option("--dims", dims_text, "comma-separated, in vertex order")->required();
  synth->add_option("--chi", chi_text, "comma-separated, fractions allowed, '-' for none")->required();
  synth->add_option("--max-iterations", max_iterations)->capture_default_str();
  synth->add_option("--target", target, "residual target")->capture_default_str();
  output_option(synth);
  synth->callback([&] {
    action = [&] { return cmd_synthesize(ctx, quiver_path, star, dims_text, chi_text, max_iterations, target); };
  });

  auto* rigidity = add("lemma1", "certify a rescaling instance");
  rigidity->add_option("input", input)->required();
  output_option(rigidity);
  rigidity->callback([&] { action = [&] { return cmd_rigidity(ctx, input); }; });

  auto* trace = add("trace-theorem1", "replay the scalar reduction on a random plain endomorphism");
  trace->add_option("input", input)->required();
  output_option(trace);
  trace->callback([&] { action = [&] { return cmd_trace(ctx, input); }; });

  auto* demo = add("demo-remark6", "the loop counterexample");
  demo->callback([&] { action = [&] { return cmd_loop_demo(ctx); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : static_cast<int>(Status::invalid_input);
  }

  Report report;
  try {
    ctx.tol.validate();
    report = action();
  } catch (const Error& e) {
    report = Report{};
    report.status = status_for(e.code());
    report.error = e.what();
  }
  report.command = app.get_subcommands().front()->get_name();

  if (report.artifact && !output.empty()) {
    const std::string text = serialize(*report.artifact);
    if (output == "-") {
      out << text;
    } else {
      std::ofstream file(output);
      if (!file) {
        report.status = Status::invalid_input;
        report.error = "cannot write '" + output + "'";
      } else {
        file << text;
      }
    }
  }

  if (format == "doc") {
    out << serialize(report_document(report, ctx));
  } else {
    render_text(report, ctx, out);
  }
  return static_cast<int>(report.status);
}

}  // namespace orthoscalar::cli
