#include "aqftop/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <ostream>
#include <sstream>

#include "aqftop/aqft.hpp"
#include "aqftop/gns.hpp"
#include "aqftop/symseq.hpp"
#include "aqftop/textio.hpp"

#ifndef AQFTOP_CORPUS_DIR
#define AQFTOP_CORPUS_DIR "corpus"
#endif

namespace aqftop {

std::filesystem::path default_corpus_dir() { return AQFTOP_CORPUS_DIR; }

namespace {

std::filesystem::path resolve(const RunConfig& cfg, const std::string& name) {
  const std::filesystem::path p(name);
  if (std::filesystem::exists(p)) return p;
  const std::filesystem::path q = cfg.corpus / p;
  if (std::filesystem::exists(q)) return q;
  throw ArgumentError("no such file: " + name + " (also looked in " + cfg.corpus.string() + ")");
}

void expect_inputs(const RunConfig& cfg, std::size_t lo, std::size_t hi) {
  if (cfg.inputs.size() < lo || cfg.inputs.size() > hi) {
    throw ArgumentError(cfg.command + ": expected " + std::to_string(lo) +
                        (lo == hi ? "" : " to " + std::to_string(hi)) + " input files, got " +
                        std::to_string(cfg.inputs.size()));
  }
}

OrthCategory load_category(const RunConfig& cfg, const std::string& name) {
  return validate_category(read_category_file(resolve(cfg, name)));
}

std::optional<StarVariant> star_variant(const RunConfig& cfg) {
  if (cfg.star == "reverse") return StarVariant::Reverse;
  if (cfg.star == "identity") return StarVariant::Identity;
  return std::nullopt;
}

/// Reports to stdout; exit code from their verdicts.
int emit(const RunConfig& cfg, const std::vector<Report>& reports, std::ostream& out,
         const nlohmann::json& extra = nlohmann::json::object()) {
  const bool ok = std::all_of(reports.begin(), reports.end(), [](const Report& r) { return r.passed(); });
  if (cfg.format == OutputFormat::Machine) {
    nlohmann::json j = extra;
    j["command"] = cfg.command;
    j["verdict"] = ok ? "pass" : "fail";
    j["reports"] = nlohmann::json::array();
    for (const auto& r : reports) j["reports"].push_back(r.json());
    out << j.dump(2) << "\n";
  } else {
    for (const auto& r : reports) out << r.human();
    out << (ok ? "verdict: pass" : "verdict: fail") << "\n";
  }
  return ok ? kExitPass : kExitFail;
}

int cmd_validate(const RunConfig& cfg, std::ostream& out) {
  expect_inputs(cfg, 1, 1);
  const CategoryData data = read_category_file(resolve(cfg, cfg.inputs[0]));
  Report rep("category " + data.name);
  try {
    build_category(data);
    rep.expect("category", true, {});
  } catch (const ValidationError& e) {
    rep.fail("category", e.what());
    return emit(cfg, {rep}, out);
  }
  try {
    const OrthCategory cat = validate_category(data);
    rep.expect("orthogonality", true, {});
    rep.note(std::to_string(cat.object_count()) + " objects, " + std::to_string(cat.morphism_count()) +
             " morphisms, " + std::to_string(cat.orth_pairs().size()) + " orthogonal pairs");
  } catch (const ValidationError& e) {
    rep.fail("orthogonality", e.what());
  }
  return emit(cfg, {rep}, out);
}

std::string counts_line(const ComponentOperad& op) {
  std::string s = "counts";
  for (std::uint32_t k = 0; k < op.seq.slot_count(); ++k) s += " " + std::to_string(op.seq.slot(k).size());
  return s;
}

int cmd_build(const RunConfig& cfg, std::ostream& out) {
  expect_inputs(cfg, 1, 1);
  const OrthCategory cat = load_category(cfg, cfg.inputs[0]);
  AqftOperad op = build_aqft_operad(cat, cfg.max_arity);
  if (auto v = star_variant(cfg)) op = attach_star(op, *v);
  const SymSeqSet& seq = op.operad.seq;
  auto star_of = [&](ElemRef x) { return op.operad.elem((*op.operad.star)[op.operad.gid(x)]); };
  if (cfg.format == OutputFormat::Machine) {
    nlohmann::json j{{"operad", op.operad.name}, {"max_arity", cfg.max_arity}, {"star", cfg.star}};
    j["slots"] = nlohmann::json::array();
    for (std::uint32_t s = 0; s < seq.slot_count(); ++s) {
      nlohmann::json classes = nlohmann::json::array();
      for (std::uint32_t e = 0; e < seq.slot(s).size(); ++e) {
        nlohmann::json c{{"label", seq.slot(s).labels[e]}, {"orbit", op.classes[s][e].orbit.size()}};
        if (op.operad.star) c["star"] = seq.elem_str(star_of({s, e}));
        classes.push_back(std::move(c));
      }
      j["slots"].push_back({{"slot", seq.slot_str(s)}, {"count", seq.slot(s).size()}, {"classes", classes}});
    }
    if (cfg.gamma) {
      auto keys = op.operad.gamma.keys();
      j["gamma"] = nlohmann::json::array();
      for (const auto& key : keys) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t k = 0; k < key.len; ++k) row.push_back(seq.elem_str(op.operad.elem(key.ids[k])));
        nlohmann::json entry{{"inputs", row}, {"result", seq.elem_str(op.operad.elem(*op.operad.gamma.get(key)))}};
        j["gamma"].push_back(std::move(entry));
      }
    }
    out << j.dump(2) << "\n";
    return kExitPass;
  }
  out << "operad " << op.operad.name << " max-arity " << cfg.max_arity << "\n";
  out << counts_line(op.operad) << "\n";
  for (std::uint32_t s = 0; s < seq.slot_count(); ++s) {
    out << "slot " << seq.slot_str(s) << " " << seq.slot(s).size() << "\n";
    for (std::uint32_t e = 0; e < seq.slot(s).size(); ++e) {
      out << "  " << seq.slot(s).labels[e] << " orbit " << op.classes[s][e].orbit.size();
      if (op.operad.star) out << " star " << seq.slot(s).labels[star_of({s, e}).elem];
      out << "\n";
    }
  }
  if (cfg.gamma) {
    for (const auto& key : op.operad.gamma.keys()) {
      out << "gamma " << seq.elem_str(op.operad.elem(key.ids[0])) << " ;";
      for (std::size_t k = 1; k < key.len; ++k) out << (k > 1 ? ", " : " ") << seq.elem_str(op.operad.elem(key.ids[k]));
      out << " = " << seq.elem_str(op.operad.elem(*op.operad.gamma.get(key))) << "\n";
    }
  }
  return kExitPass;
}

int cmd_check_operad(const RunConfig& cfg, std::ostream& out) {
  expect_inputs(cfg, 1, 1);
  const OrthCategory cat = load_category(cfg, cfg.inputs[0]);
  AqftOperad op = build_aqft_operad(cat, cfg.max_arity);
  std::vector<Report> reports{check_operad_axioms(op.operad, cfg.max_arity)};
  if (auto v = star_variant(cfg)) reports.push_back(check_star_operad(attach_star(op, *v).operad, cfg.max_arity));
  if (cfg.coend) reports.push_back(check_monoid_formulation(op.operad, cfg.max_arity));
  return emit(cfg, reports, out);
}

int cmd_check_algebra(const RunConfig& cfg, std::ostream& out) {
  expect_inputs(cfg, 2, 2);
  const OrthCategory cat = load_category(cfg, cfg.inputs[0]);
  const AlgebraFile file = read_algebra_file(resolve(cfg, cfg.inputs[1]));
  const FunctorToMon fun = resolve_functor(file, cat);
  std::vector<Report> reports{check_functor(fun, cat)};
  if (!reports.back().passed()) return emit(cfg, reports, out);
  reports.push_back(check_perp_commutativity(fun, cat));
  if (!reports.back().passed()) return emit(cfg, reports, out);

  AqftOperad op = build_aqft_operad(cat, cfg.max_arity);
  const AlgebraPresentation alg = algebra_from_functor(fun, op);
  reports.push_back(check_algebra(op.operad, alg, cfg.max_arity));
  Report trip("round trip");
  const FunctorToMon back = functor_from_algebra(alg, op);
  trip.expect("functor-algebra-functor", same_presentation(fun, back),
              [] { return "the recovered functor differs from the input"; });
  reports.push_back(std::move(trip));

  if (auto v = star_variant(cfg)) {
    reports.push_back(check_star_functor(fun, cat));
    reports.push_back(check_star_algebra(attach_star(op, *v).operad, alg, cfg.max_arity));
  }
  return emit(cfg, reports, out);
}

int cmd_gns(const RunConfig& cfg, std::ostream& out) {
  expect_inputs(cfg, 1, 1);
  const AlgebraFile file = read_algebra_file(resolve(cfg, cfg.inputs[0]));
  if (file.states.empty()) throw ArgumentError("gns: " + cfg.inputs[0] + " declares no state");
  const NamedState* st = cfg.state.empty() ? &file.states.front() : file.find_state(cfg.state);
  if (!st) throw ArgumentError("gns: no state named " + cfg.state);
  std::vector<Report> reports{check_state(st->state)};
  if (!reports.back().passed()) return emit(cfg, reports, out);
  const GnsResult g = gns_construct(st->state);
  reports.push_back(check_inner_product(g.space));
  reports.push_back(check_representation(st->state.algebra, g.space, g.rep));
  const auto& basis = st->state.algebra.basis;
  nlohmann::json extra = nlohmann::json::object();
  if (cfg.format == OutputFormat::Machine) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < g.space.dim(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (std::size_t c = 0; c < g.space.dim(); ++c) row.push_back(g.space.gram(r, c).str());
      rows.push_back(std::move(row));
    }
    extra = {{"state", st->name}, {"basis", basis}, {"gram", rows}};
  } else {
    out << "state " << st->name << " on " << st->state.algebra.name << "\n";
    out << "gram";
    for (const auto& b : basis) out << " " << b;
    out << "\n";
    for (std::size_t r = 0; r < g.space.dim(); ++r) {
      out << "  " << basis[r];
      for (std::size_t c = 0; c < g.space.dim(); ++c) out << " " << g.space.gram(r, c).str();
      out << "\n";
    }
  }
  return emit(cfg, reports, out, extra);
}

int cmd_circle(const RunConfig& cfg, std::ostream& out) {
  expect_inputs(cfg, 1, 1);
  const OrthCategory cat = load_category(cfg, cfg.inputs[0]);
  const AqftOperad op = build_aqft_operad(cat, cfg.max_arity);
  const PositivePart pp = positive_part(op.operad);
  const CoendResult oo = circle_product(pp.seq, pp.seq, cfg.max_arity);
  if (cfg.format == OutputFormat::Human) {
    out << "coend P o P, positive part of " << op.operad.name << ", raw tuples " << oo.raw.size() << "\n";
    for (std::uint32_t s = 0; s < oo.seq.slot_count(); ++s) {
      out << "slot " << oo.seq.slot_str(s) << " " << oo.seq.slot(s).size() << "\n";
      for (std::uint32_t e = 0; e < oo.seq.slot(s).size(); ++e) {
        out << "  " << oo.seq.slot(s).labels[e] << " members " << oo.members[s][e].size() << "\n";
      }
    }
  }
  return emit(cfg, {check_monoid_formulation(op.operad, cfg.max_arity)}, out);
}

int cmd_kan(const RunConfig& cfg, std::ostream& out) {
  expect_inputs(cfg, 0, 1);
  std::vector<Report> reports;
  bool found = cfg.inputs.empty();
  for (const auto& k : bundled_kan_instances()) {
    if (!cfg.inputs.empty() && cfg.inputs[0] != k.name) continue;
    found = true;
    if (cfg.format == OutputFormat::Human) {
      const KanResult fx = left_kan(k.f, k.target_colors, k.x);
      out << "instance " << k.name << "\n" << "f_! X:\n" << fx.seq.dump();
    }
    Report r = check_kan_adjunction(k.f, k.source_colors, k.target_colors, k.x, k.y);
    r.merge(check_pullback_monoidal(k.f, k.source_colors, k.y, k.y, cfg.max_arity), "pullback-");
    reports.push_back(std::move(r));
  }
  if (!found) throw ArgumentError("kan: no bundled instance named " + cfg.inputs[0]);
  return emit(cfg, reports, out);
}

}  // namespace

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.max_arity > 6) throw ArgumentError("--max-arity must lie in [0, 6]");
    if (cfg.command == "validate") return cmd_validate(cfg, out);
    if (cfg.command == "build-operad") return cmd_build(cfg, out);
    if (cfg.command == "check-operad") return cmd_check_operad(cfg, out);
    if (cfg.command == "check-algebra") return cmd_check_algebra(cfg, out);
    if (cfg.command == "gns") return cmd_gns(cfg, out);
    if (cfg.command == "circle") return cmd_circle(cfg, out);
    if (cfg.command == "kan") return cmd_kan(cfg, out);
    throw ArgumentError("unknown command " + cfg.command);
  } catch (const ValidationError& e) {
    // Semantic failures found while loading inputs carry a witness.
    err << "error: " << e.what() << "\n";
    return kExitFail;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Operads of orthogonal categories and their algebras", "aqftop"};
  app.require_subcommand(1);
  RunConfig cfg;
  cfg.corpus = default_corpus_dir();
  std::string format = "human";
  std::string corpus = cfg.corpus.string();
  app.add_option("--max-arity", cfg.max_arity, "Largest arity built and checked")->check(CLI::Range(0, 6));
  app.add_option("--star", cfg.star, "Involution on the operad")->check(CLI::IsMember({"reverse", "identity", "none"}));
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"human", "machine"}));
  app.add_option("--corpus", corpus, "Directory searched for input files");

  struct Sub {
    const char* name;
    const char* help;
    std::size_t files;
  };
  const Sub subs[] = {
      {"validate", "Validate a category file and its orthogonality relation", 1},
      {"build-operad", "Dump the operad of a category", 1},
      {"check-operad", "Check the operad and star-operad axioms", 1},
      {"check-algebra", "Check a functor file as an algebra over the operad", 2},
      {"gns", "Check a state and run the GNS construction", 1},
      {"circle", "Dump the coend P o P and compare with the component form", 1},
      {"kan", "Check the bundled color-change adjunctions", 1},
  };
  for (const auto& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->fallthrough();
    auto* files = sub->add_option("files", cfg.inputs, "Input files");
    if (std::string(s.name) == "kan") {
      files->expected(0, 1);
    } else {
      files->required()->expected(static_cast<int>(s.files));
    }
    if (std::string(s.name) == "build-operad") sub->add_flag("--gamma", cfg.gamma, "Print the composition table");
    if (std::string(s.name) == "check-operad") sub->add_flag("--coend", cfg.coend, "Also run the coend comparison");
    if (std::string(s.name) == "gns") sub->add_option("--state", cfg.state, "State to use, default the first");
    sub->callback([&cfg, name = std::string(s.name)] { cfg.command = name; });
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  cfg.format = format == "machine" ? OutputFormat::Machine : OutputFormat::Human;
  cfg.corpus = corpus;
  return run_command(cfg, out, err);
}

}  // namespace aqftop
