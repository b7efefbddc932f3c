#include "qg/commands.hpp"

#include <fstream>
#include <iostream>

#include "qg/builtin.hpp"
#include "qg/error.hpp"
#include "qg/io.hpp"
#include "qg/quotient.hpp"
#include "qg/spectral.hpp"

namespace qg::cli {

using io::Json;

namespace {

int input_error(std::ostream& out, const std::string& what, const Json& detail = Json()) {
  Json j{{"error", "validation"}, {"message", what}};
  if (!detail.is_null()) j["detail"] = detail;
  out << j.dump() << "\n";
  return kInputError;
}

Json rep_file(const Representation& rep) {
  return io::rep_to_json(rep, io::group_to_json(*rep.group()));
}

}  // namespace

int guarded(const std::function<int()>& body, std::ostream& err) {
  auto report = [&](const std::string& kind, const std::string& msg) {
    err << Json{{"error", kind}, {"message", msg}}.dump() << "\n";
  };
  try {
    return body();
  } catch (const Error& e) {
    report(to_string(e.kind()), e.what());
    return e.kind() == ErrorKind::Solver ? kSolverFailure : kInputError;
  } catch (const nlohmann::json::exception& e) {
    report("io", e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    report("io", e.what());
  }
  return kInputError;
}

int cmd_quotient(const QuotientArgs& args, std::ostream& out) {
  io::Loader loader;
  const QuantumGraph graph = loader.graph(args.graph);
  const Json aj = io::read_json(args.action);
  const GroupPtr group = loader.resolve_group(aj.at("group"), args.action.parent_path());
  const GraphAction action = io::action_from_json(aj, group, graph);
  const Representation rep = loader.rep(args.rep);
  if (rep.group().get() != group.get())
    return input_error(out, "representation and action refer to different groups");

  const RepValidation rv = validate_rep(rep, 1e-9);
  if (!rv.ok)
    return input_error(out, "representation is not a homomorphism",
                       Json{{"max_deviation", rv.max_deviation}, {"g", rv.worst_g}, {"h", rv.worst_h}});
  const ActionValidation av = validate_action(action);
  if (!av.ok) {
    Json issues = Json::array();
    for (const auto& i : av.issues)
      issues.push_back(Json{{"check", i.check}, {"g", i.g}, {"item", i.item}, {"detail", i.detail}});
    return input_error(out, "action is invalid", issues);
  }

  QuotientOptions opts;
  if (args.theta) {
    if (rep.dim() != 2) return input_error(out, "--theta needs a 2-dimensional representation");
    opts.basis = builtin::rotation(*args.theta);
  }
  QuotientResult q = build_quotient(make_recipe(action, rep, opts));
  if (args.split_vertices) q = split_vertices(q);
  const Classification c = classify(q);

  io::write_json(args.out / "graph.json", io::graph_to_json(q.graph));
  io::write_json(args.out / "provenance.json", io::provenance_to_json(q, c));
  out << Json{{"vertices", q.graph.vertex_count()},
              {"edges", q.graph.edge_count()},
              {"classification", to_string(c.kind)},
              {"self_adjoint", is_self_adjoint(q.graph)}}
             .dump()
      << "\n";
  return kPass;
}

int cmd_spectrum(const SpectrumArgs& args, std::ostream& out) {
  io::Loader loader;
  const QuantumGraph graph = loader.graph(args.graph);
  SolverSettings st;
  st.scan_step = args.scan_step;
  st.accept_tol = args.tol;
  const Spectrum s = find_spectrum(graph, args.k_max, st);
  if (args.out.has_parent_path()) fs::create_directories(args.out.parent_path());
  std::ofstream csv(args.out);
  if (!csv) throw Error(ErrorKind::Io, "cannot write " + args.out.string());
  csv << io::spectrum_csv(s);
  fs::path sidecar = args.out;
  sidecar.replace_extension(".json");
  io::write_json(sidecar, io::spectrum_to_json(s));
  out << Json{{"eigenvalues", s.count()},
              {"zero_mode_multiplicity", s.zero_mode_multiplicity},
              {"warnings", s.warnings}}
             .dump()
      << "\n";
  return kPass;
}

int cmd_verify(const VerifyArgs& args, std::ostream& out) {
  io::Loader loader;
  const Spectrum a = find_spectrum(loader.graph(args.graph_a), args.k_max);
  const Spectrum b = find_spectrum(loader.graph(args.graph_b), args.k_max);
  const SpectrumReport r = compare_spectra(a, b, args.tol);
  const bool ok = r.pass && !r.zero_mode_mismatch;
  if (args.report) io::write_json(*args.report, io::report_to_json(r));
  Json summary{{"verdict", ok ? "pass" : "fail"},
               {"matched", r.matched.size()},
               {"max_deviation", r.max_deviation},
               {"zero_mode_mismatch", r.zero_mode_mismatch}};
  if (!ok) {
    Json ua = Json::array(), ub = Json::array();
    for (const auto& e : r.unmatched_a) ua.push_back(e.k);
    for (const auto& e : r.unmatched_b) ub.push_back(e.k);
    summary["unmatched_a"] = ua;
    summary["unmatched_b"] = ub;
  }
  out << summary.dump() << "\n";
  return ok ? kPass : kVerifyFail;
}

int cmd_example(const ExampleArgs& args, std::ostream& out) {
  builtin::ExampleBundle bundle = [&] {
    if (args.name == "square-d4")
      return builtin::square_d4(args.a, args.b, args.c, args.theta.value_or(std::numbers::pi / 3));
    if (args.name == "interval-z2") return builtin::interval_z2(args.l);
    if (args.name == "ygraph") {
      if (args.lengths.size() != 3) throw Error(ErrorKind::InvalidArgument, "ygraph needs three lengths");
      return builtin::ygraph({args.lengths[0], args.lengths[1], args.lengths[2]});
    }
    throw Error(ErrorKind::InvalidArgument, "unknown example '" + args.name + "'");
  }();
  const ActionValidation av = validate_action(bundle.action);
  if (!av.ok) throw Error(ErrorKind::Inconsistency, "built-in action failed validation");

  io::write_json(args.out / "group.json", io::group_to_json(*bundle.group));
  io::write_json(args.out / "graph.json", io::graph_to_json(bundle.action.graph()));
  io::write_json(args.out / "action.json", io::action_to_json(bundle.action, "group.json", "graph.json"));
  Json reps = Json::array();
  for (const auto& [name, rep] : bundle.reps) {
    const std::string file = "rep-" + name + ".json";
    io::write_json(args.out / file, io::rep_to_json(rep, "group.json"));
    reps.push_back(file);
  }
  io::write_json(args.out / "params.json", Json{{"name", bundle.name}, {"params", bundle.params}});
  out << Json{{"example", bundle.name}, {"files", reps}}.dump() << "\n";
  return kPass;
}

int cmd_rep(const RepArgs& args, std::ostream& out) {
  io::Loader loader;
  const Representation rep = loader.rep(args.rep);
  auto emit = [&](const Json& j) {
    if (args.out) io::write_json(*args.out, j);
    else out << io::canonical_dump(j);
  };
  if (args.action == "induce") {
    emit(rep_file(induce(rep)));
  } else if (args.action == "restrict") {
    emit(rep_file(restrict(rep, Subgroup(rep.group(), args.elements))));
  } else if (args.action == "character") {
    const Character ch = character(rep);
    Json values = Json::object();
    for (Element g : ch.domain.elements()) values[std::to_string(g)] = io::complex_to_json(ch(g));
    emit(Json{{"values", values}});
  } else if (args.action == "check-iso") {
    const Representation other = loader.rep(args.other);
    const bool iso = is_isomorphic(rep, other, args.tol);
    out << Json{{"isomorphic", iso}}.dump() << "\n";
    return iso ? kPass : kVerifyFail;
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown rep action '" + args.action + "'");
  }
  return kPass;
}

}  // namespace qg::cli
