#include "ontofit/cli.hpp"

#include <filesystem>
#include <ostream>

#include "CLI11.hpp"
#include "ontofit/entailment.hpp"
#include "ontofit/generate.hpp"
#include "ontofit/harness.hpp"
#include "ontofit/preprocess.hpp"
#include "ontofit/text.hpp"

namespace ontofit {

namespace {

int exit_code(Outcome o) {
  switch (o) {
    case Outcome::FittingExists: return 0;
    case Outcome::NoFitting: return 1;
    case Outcome::NoFittingWithinBounds:
    case Outcome::Unknown: return 2;
  }
  return 2;
}

// A path when such a file exists, otherwise the text itself.
std::string file_or_text(const std::string& arg) {
  return std::filesystem::is_regular_file(arg) ? read_file(arg) : arg;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ontology fitting from positive and negative examples"};
  app.require_subcommand(1);

  std::string mode;
  std::string logic;
  std::string examples;
  std::string emit;
  int depth_unit = 0;
  int degree = 0;
  int finite_size = -1;
  long max_steps = 0;
  auto* fit = app.add_subcommand("fit", "decide whether a fitting ontology exists");
  fit->add_option("--mode", mode, "consistency, aq, fullcq, ucq or alcq")
      ->check(CLI::IsMember({"consistency", "aq", "fullcq", "ucq", "alcq"}));
  fit->add_option("--logic", logic, "alc, alci or alcq")->check(CLI::IsMember({"alc", "alci", "alcq"}));
  fit->add_option("--depth-unit", depth_unit, "ucq: depth unit of base candidates and mosaics");
  fit->add_option("--degree", degree, "ucq: maximal degree");
  fit->add_option("--finite-size", finite_size, "ucq: elements per part of a finite witness (0 disables)");
  fit->add_option("--max-steps", max_steps, "ucq: search step budget");
  fit->add_option("--emit-ontology", emit, "write the fitting ontology here");
  fit->add_option("examples", examples, "examples file")->required();

  std::string ontology_path;
  std::string verify_examples;
  auto* verify = app.add_subcommand("verify", "check an ontology against examples");
  verify->add_option("--ontology", ontology_path, "ontology file")->required();
  verify->add_option("examples", verify_examples, "examples file")->required();

  std::string abox_arg;
  std::string onto_arg;
  std::string query_arg;
  auto* entail = app.add_subcommand("entail", "decide whether ABox and ontology entail a query");
  entail->add_option("--abox", abox_arg, "ABox file or text")->required();
  entail->add_option("--ontology", onto_arg, "ontology file or text")->required();
  entail->add_option("--query", query_arg, "query file or text")->required();
  entail->add_option("--logic", logic, "alc or alci")->check(CLI::IsMember({"alc", "alci"}));

  std::string output;
  auto* generate = app.add_subcommand("generate", "examples that fit iff a query is not entailed");
  generate->add_option("--abox", abox_arg, "ABox file or text")->required();
  generate->add_option("--ontology", onto_arg, "ontology file or text")->required();
  generate->add_option("--query", query_arg, "CQ file or text")->required();
  generate->add_option("-o,--output", output, "output file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 3;
  }

  try {
    if (*fit) {
      ExampleCollection e = parse_collection(read_file(examples));
      if (mode == "alcq") {
        e.mode = Mode::Consistency;
        e.logic = Logic::ALCQ;
      } else if (!mode.empty()) {
        e.mode = *mode_from_string(mode);
      }
      if (!logic.empty()) e.logic = *logic_from_string(logic);
      check_well_formed(e);
      std::optional<Bounds> bounds;
      if (e.mode == Mode::UCQ && (depth_unit > 0 || degree > 0 || finite_size >= 0 || max_steps > 0)) {
        bounds = default_bounds(preprocess_collection(e));
        if (depth_unit > 0) bounds->depth_unit = depth_unit;
        if (degree > 0) bounds->degree = degree;
        if (finite_size >= 0) bounds->finite_witness_size = finite_size;
        if (max_steps > 0) bounds->max_steps = max_steps;
      }
      const RunReport r = run_fit(e, bounds);
      out << r.to_text();
      if (!emit.empty() && r.verdict.ontology) write_file(emit, serialize(*r.verdict.ontology));
      return exit_code(r.verdict.outcome);
    }
    if (*verify) {
      const Ontology o = parse_ontology(read_file(ontology_path));
      const ExampleCollection e = parse_collection(read_file(verify_examples));
      RunReport r = verify_fit(o, e);
      r.verdict.ontology.reset();
      out << (r.verdict.outcome == Outcome::FittingExists ? "fits" : r.verdict.outcome == Outcome::NoFitting
                                                                         ? "does not fit"
                                                                         : "unknown")
          << "\n"
          << r.to_text();
      return exit_code(r.verdict.outcome);
    }
    if (*entail) {
      const ABox a = parse_abox(file_or_text(abox_arg));
      const Ontology o = parse_ontology(file_or_text(onto_arg));
      const UCQ q = parse_ucq(file_or_text(query_arg));
      const Logic l = logic.empty() ? (o.logic == Logic::ALCI ? Logic::ALCI : Logic::ALC) : *logic_from_string(logic);
      const auto ans = entails_ucq_bounded(a, o, q, l);
      out << to_string(ans.kind) << "\n";
      if (!ans.diagnostics.empty()) out << "note: " << ans.diagnostics << "\n";
      if (ans.countermodel) out << "countermodel:\n" << to_string(*ans.countermodel);
      return ans.kind == EntailmentAnswer::Kind::Entailed ? 0 : ans.kind == EntailmentAnswer::Kind::NotEntailed ? 1 : 2;
    }
    if (*generate) {
      const ABox a = parse_abox(file_or_text(abox_arg));
      const Ontology o = parse_ontology(file_or_text(onto_arg));
      const UCQ q = parse_ucq(file_or_text(query_arg));
      if (q.disjuncts.size() != 1) throw ContractError("generate needs a single CQ");
      const ExampleCollection e = generate_from_entailment(a, o, q.disjuncts.front());
      write_file(output, serialize_collection(e));
      out << "wrote " << e.positives.size() << " positive and " << e.negatives.size() << " negative examples to "
          << output << "\n";
      return 0;
    }
  } catch (const ParseError& e) {
    err << "parse error at " << e.line() << ":" << e.column() << ": " << e.what() << "\n";
    return 3;
  } catch (const ContractError& e) {
    err << "input error: " << e.what() << "\n";
    return 3;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}

}  // namespace ontofit
