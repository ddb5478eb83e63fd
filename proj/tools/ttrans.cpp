// Copyright 2026 The ttrans Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: evaluation, checks, conversions, differential
// testing, and dependency-graph export over the transducer file formats.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ttrans/constructions.hpp"
#include "ttrans/difftest.hpp"
#include "ttrans/dynfv.hpp"
#include "ttrans/io.hpp"

using nlohmann::json;
using namespace ttrans;

namespace {

constexpr int kExitUsage = 64;
constexpr int kExitParse = 65;
constexpr int kExitSemantic = 1;
constexpr int kExitInternal = 70;

struct CheckFailed {};   // negative verdict, exit 1 after output
struct DifftestError {};  // difftest exits 2 on any error

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw EvalError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path);
  if (!out) throw EvalError("cannot write '" + path + "'");
  out << body;
}

struct StageRef {
  std::string kind;  // mtt | att | brel | trel
  std::string path;
};

// The pipeline flags are order-sensitive across the four kinds, so they are
// collected from the raw argument vector.
std::vector<StageRef> scan_stage_refs(int argc, char** argv) {
  std::vector<StageRef> refs;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    for (const char* kind : {"mtt", "att", "brel", "trel"}) {
      std::string flag = std::string("--") + kind;
      if (arg == flag && i + 1 < argc) {
        refs.push_back({kind, argv[++i]});
      } else if (arg.rfind(flag + "=", 0) == 0) {
        refs.push_back({kind, arg.substr(flag.size() + 1)});
      }
    }
  }
  return refs;
}

Stage load_stage(const StageRef& ref) {
  std::string text = read_file(ref.path);
  Stage s = parse_stage(text);
  if (stage_kind(s) != ref.kind)
    throw ValidationError("'" + ref.path + "' contains a " + stage_kind(s) + ", passed as --" +
                          ref.kind);
  return s;
}

Stage load_stage_auto(const std::string& path) { return parse_stage(read_file(path)); }

Pipeline load_pipeline(const std::vector<StageRef>& refs) {
  Pipeline p;
  for (const auto& ref : refs) p.stages.push_back(load_stage(ref));
  require_valid(p);
  return p;
}

struct Options {
  std::vector<StageRef> stages;
  std::vector<std::string> lookaround_files;
  std::string input_text;
  std::string input_file;
  std::string rho_file;
  std::string dot_file;
  std::string out_prefix;
  int bound = 6;
  bool json_mode = false;
};

Tree parse_input(const Options& opt, const RankedAlphabet& alphabet) {
  std::string text = opt.input_text;
  if (text.empty() && !opt.input_file.empty()) text = read_file(opt.input_file);
  if (text.empty()) throw EvalError("no input tree; pass --input or --input-file");
  return parse_tree(text, alphabet);
}

const Mtt& expect_single_mtt(const Pipeline& p, const std::string& what) {
  if (p.stages.size() != 1 || !std::holds_alternative<Mtt>(p.stages[0]))
    throw EvalError(what + " expects exactly one --mtt");
  return std::get<Mtt>(p.stages[0]);
}

const Att& expect_single_att(const Pipeline& p, const std::string& what) {
  if (p.stages.size() != 1 || !std::holds_alternative<Att>(p.stages[0]))
    throw EvalError(what + " expects exactly one --att");
  return std::get<Att>(p.stages[0]);
}

// Splits the trailing mtt off a pipeline, leaving the relabeling prefix.
// Files passed via --lookaround are prepended to that prefix.
std::pair<Pipeline, const Mtt*> split_lookaround(const Options& opt, const Pipeline& p,
                                                 const std::string& what) {
  if (p.stages.empty() || !std::holds_alternative<Mtt>(p.stages.back()))
    throw EvalError(what + " expects relabelings followed by one --mtt");
  Pipeline prefix;
  for (const auto& file : opt.lookaround_files) prefix.stages.push_back(load_stage_auto(file));
  for (std::size_t i = 0; i + 1 < p.stages.size(); ++i) prefix.stages.push_back(p.stages[i]);
  require_valid(prefix);
  return {prefix, &std::get<Mtt>(p.stages.back())};
}

void emit(const Options& opt, const json& report, const std::string& human) {
  if (opt.json_mode)
    std::cout << report.dump(2) << "\n";
  else
    std::cout << human;
}

json rho_to_json(const ParamRenaming& rho) {
  json out = json::array();
  for (const auto& [key, target] : rho.entries())
    out.push_back({{"state", key.first}, {"index", key.second}, {"target", target}});
  return out;
}

// ---- subcommands ----------------------------------------------------------

void run_eval(const Options& opt) {
  Pipeline p = load_pipeline(opt.stages);
  if (p.empty()) throw EvalError("eval needs at least one transducer stage");
  Tree input = parse_input(opt, stage_input(p.stages.front()));
  if (opt.json_mode) {
    // stage-by-stage, recording the state each look-ahead run reaches
    json stages = json::array();
    Tree current = input;
    for (const Stage& stage : p.stages) {
      json entry{{"kind", stage_kind(stage)}, {"name", stage_name(stage)}};
      if (const Brel* b = std::get_if<Brel>(&stage)) {
        auto [tree, state] = brel_apply(*b, current);
        current = std::move(tree);
        entry["root_state"] = state;
      } else {
        current = pipeline_apply(Pipeline{{stage}}, current);
      }
      stages.push_back(std::move(entry));
    }
    json report{{"schema", 1},
                {"check", "eval"},
                {"input", format_tree(input)},
                {"stages", stages},
                {"output", format_tree(current)}};
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << format_tree(pipeline_apply(p, input)) << "\n";
  }
}

void run_check_fv(const Options& opt) {
  Pipeline p = load_pipeline(opt.stages);
  const Mtt& m = expect_single_mtt(p, "check fv");
  if (!opt.rho_file.empty()) {
    ParamRenaming rho = parse_rho(read_file(opt.rho_file));
    auto violation = check_fv(m, rho);
    json report{{"schema", 1}, {"check", "fv"}, {"verdict", violation ? "fail" : "pass"}};
    if (violation) {
      report["witness"] = {{"symbol", violation->sigma},
                           {"rule1", violation->q1},
                           {"rule2", violation->q2},
                           {"argument1", print_mtt_rhs(m, violation->t1)},
                           {"argument2", print_mtt_rhs(m, violation->t2)}};
      emit(opt, report,
           "fail: at symbol '" + violation->sigma + "', the renamed arguments " +
               print_mtt_rhs(m, violation->t1) + " and " + print_mtt_rhs(m, violation->t2) +
               " differ\n");
      throw CheckFailed{};
    }
    emit(opt, report, "pass\n");
    return;
  }
  auto rho = find_rho(m);
  json report{{"schema", 1}, {"check", "fv"}, {"verdict", rho ? "pass" : "fail"}};
  if (!rho) {
    emit(opt, report, "fail: no parameter renaming works\n");
    throw CheckFailed{};
  }
  report["rho"] = rho_to_json(*rho);
  emit(opt, report, print_rho(*rho));
}

void run_check_consistency(const Options& opt) {
  Pipeline p = load_pipeline(opt.stages);
  const Mtt& m = expect_single_mtt(p, "check consistency");
  auto violation = is_consistent(m);
  json report{{"schema", 1}, {"check", "consistency"}, {"verdict", violation ? "fail" : "pass"}};
  if (violation) {
    report["witness"] = {{"symbol", violation->sigma},
                         {"rule1", violation->q1},
                         {"rule2", violation->q2},
                         {"position1", format_path(violation->w1)},
                         {"position2", format_path(violation->w2)},
                         {"argument", violation->j}};
    emit(opt, report,
         "fail: at symbol '" + violation->sigma + "', rules " + violation->q1 + " and " +
             violation->q2 + " disagree at argument " + std::to_string(violation->j) + "\n");
    throw CheckFailed{};
  }
  emit(opt, report, "pass\n");
}

void run_check_flag(const Options& opt, const std::string& which) {
  Pipeline p = load_pipeline(opt.stages);
  const Mtt& m = expect_single_mtt(p, "check " + which);
  bool ok = which == "nondeleting" ? is_nondeleting(m) : is_nonerasing(m);
  json report{{"schema", 1}, {"check", which}, {"verdict", ok ? "pass" : "fail"}};
  emit(opt, report, ok ? "pass\n" : "fail\n");
  if (!ok) throw CheckFailed{};
}

void run_check_circular(const Options& opt) {
  Pipeline p = load_pipeline(opt.stages);
  const Att& a = expect_single_att(p, "check circular");
  auto witness = att_is_circular(a);
  json report{{"schema", 1}, {"check", "circular"}, {"verdict", witness ? "fail" : "pass"}};
  if (witness) {
    report["witness"] = format_tree(*witness);
    emit(opt, report, "fail: circular on " + format_tree(*witness) + "\n");
    throw CheckFailed{};
  }
  emit(opt, report, "pass: non-circular\n");
}

void run_check_dynfv(const Options& opt) {
  Pipeline p = load_pipeline(opt.stages);
  auto [lookaround, m] = split_lookaround(opt, p, "check dynfv");
  DynFvVerdict verdict =
      check_dynamic_fv(*m, lookaround.empty() ? nullptr : &lookaround, opt.bound);
  json report{{"schema", 1},
              {"check", "dynfv"},
              {"verdict", verdict.pass ? "pass-up-to-bound" : "violation"},
              {"bound", verdict.bound},
              {"tested", verdict.tested}};
  if (!verdict.pass) {
    const DynFvViolation& v = *verdict.violation;
    report["witness"] = {{"source", format_tree(v.source)},
                         {"input", format_tree(v.input)},
                         {"node", format_path(v.u)},
                         {"state", v.state},
                         {"argument", v.j},
                         {"call1", print_mtt_rhs(*m, v.call1)},
                         {"call2", print_mtt_rhs(*m, v.call2)},
                         {"value1", format_tree(v.value1)},
                         {"value2", format_tree(v.value2)}};
    emit(opt, report,
         "violation on " + format_tree(v.input) + " at " + format_path(v.u) + ": state " +
             v.state + " argument " + std::to_string(v.j) + " evaluates to " +
             format_tree(v.value1) + " and " + format_tree(v.value2) + "\n");
    throw CheckFailed{};
  }
  emit(opt, report,
       "no violation up to bound " + std::to_string(verdict.bound) + " (" +
           std::to_string(verdict.tested) + " inputs)\n");
}

void run_check_importance(const Options& opt, const std::string& state,
                          const std::string& symbol, const std::string& path) {
  Pipeline p = load_pipeline(opt.stages);
  const Mtt& m = expect_single_mtt(p, "check importance");
  bool ok = is_important(m, state, symbol, parse_path(path));
  json report{{"schema", 1}, {"check", "importance"}, {"verdict", ok ? "pass" : "fail"}};
  emit(opt, report, ok ? "important\n" : "not important\n");
  if (!ok) throw CheckFailed{};
}

void run_check_permanent(const Options& opt, const std::string& state, int j) {
  Pipeline p = load_pipeline(opt.stages);
  const Mtt& m = expect_single_mtt(p, "check permanent");
  bool ok = is_permanent(m, state, j);
  json report{{"schema", 1}, {"check", "permanent"}, {"verdict", ok ? "pass" : "fail"}};
  emit(opt, report, ok ? "permanent\n" : "not permanent\n");
  if (!ok) throw CheckFailed{};
}

ParamRenaming rho_for(const Options& opt, const Mtt& m, const std::string& what) {
  if (!opt.rho_file.empty()) return parse_rho(read_file(opt.rho_file));
  auto rho = find_rho(m);
  if (!rho)
    throw EvalError(what + ": '" + m.name +
                    "' has no parameter renaming; pass --rho or use another construction");
  return *rho;
}

void emit_documents(const Options& opt,
                    const std::vector<std::pair<std::string, std::string>>& docs) {
  // Each document is (suffix, body). Without --out everything goes to
  // stdout; with --out PREFIX each lands in PREFIX.<suffix>.
  for (const auto& [suffix, body] : docs) {
    if (opt.out_prefix.empty())
      std::cout << body;
    else
      write_file(opt.out_prefix + "." + suffix, body);
  }
}

void run_convert(const Options& opt, const std::string& what,
                 const std::vector<std::string>& gadget_left,
                 const std::vector<std::string>& gadget_right) {
  if (what == "gadget") {
    Pipeline left, right;
    for (const auto& f : gadget_left) left.stages.push_back(load_stage_auto(f));
    for (const auto& f : gadget_right) right.stages.push_back(load_stage_auto(f));
    require_valid(left);
    require_valid(right);
    GadgetResult g = equivalence_gadget(left, right);
    std::vector<std::pair<std::string, std::string>> docs;
    std::vector<std::string> header{"construction: gadget"};
    int i = 0;
    for (const Stage& s : g.relabeling.stages)
      docs.push_back(
          {"conv" + std::to_string(++i) + "." + stage_kind(s), print_stage(s, header)});
    docs.push_back({"mtt", print_mtt(g.mtt, header)});
    emit_documents(opt, docs);
    return;
  }

  Pipeline p = load_pipeline(opt.stages);
  if (what == "from-att") {
    const Att& a = expect_single_att(p, "convert from-att");
    Mtt m = att_to_consistent_mtt(a);
    emit_documents(opt,
                   {{"mtt", print_mtt(m, {"construction: mtt-from-att", "source: " + a.name})}});
    return;
  }

  if (what == "dynfv-att") {
    auto [lookaround, m] = split_lookaround(opt, p, "convert dynfv-att");
    DynFvAttResult built =
        build_dynfv_att(*m, lookaround.empty() ? nullptr : &lookaround, opt.bound);
    std::vector<std::string> header{
        "construction: state-annotation + companion att", "source: " + m->name,
        "state order: declaration order of the source states",
        "traversal: post-order over each annotated state's rule"};
    for (const auto& note : built.notes) header.push_back("note: " + note);
    emit_documents(opt, {{"trel", print_trel(built.relabeling, header)},
                         {"att", print_att(built.att, header)}});
    return;
  }

  if (what == "product") {
    if (p.stages.size() != 2 || !std::holds_alternative<Trel>(p.stages[0]) ||
        !std::holds_alternative<Mtt>(p.stages[1]))
      throw EvalError("convert product expects --trel FILE --mtt FILE");
    Mtt m = trel_mtt_product(std::get<Trel>(p.stages[0]), std::get<Mtt>(p.stages[1]));
    emit_documents(opt, {{"mtt", print_mtt(m, {"construction: relabeling product"})}});
    return;
  }

  if (what == "nondeleting" || what == "nonerasing") {
    const Mtt& m = expect_single_mtt(p, "convert " + what);
    NormalFormResult nf = what == "nondeleting" ? nondeleting_nf(m) : nonerasing_nf(m);
    std::vector<std::string> header{"construction: " + what + " normal form",
                                    "source: " + m.name};
    std::vector<std::pair<std::string, std::string>> docs{
        {"brel", print_brel(nf.lookahead, header)}, {"mtt", print_mtt(nf.core, header)}};
    if (nf.renaming) docs.push_back({"rho", print_rho(*nf.renaming)});
    emit_documents(opt, docs);
    return;
  }

  const Mtt& m = expect_single_mtt(p, "convert " + what);
  ParamRenaming rho = rho_for(opt, m, "convert " + what);
  std::vector<std::string> header{"source: " + m.name};
  if (what == "consistent") {
    header.insert(header.begin(), "construction: rank padding");
    emit_documents(opt, {{"mtt", print_mtt(expand_to_consistent(m, rho), header)}});
  } else if (what == "att") {
    header.insert(header.begin(), "construction: rank padding + att");
    emit_documents(opt, {{"att", print_att(fv_to_att(m, rho), header)}});
  } else if (what == "att-direct") {
    header.insert(header.begin(), "construction: direct att");
    emit_documents(opt, {{"att", print_att(omega_direct(m, rho), header)}});
  } else {
    throw EvalError("unknown conversion '" + what + "'");
  }
}

void run_difftest(const Options& opt, const std::vector<std::string>& files,
                  const std::vector<std::string>& right_files) {
  Pipeline p1, p2;
  DiffReport r;
  try {
    for (const auto& f : files) p1.stages.push_back(load_stage_auto(f));
    for (const auto& f : right_files) p2.stages.push_back(load_stage_auto(f));
    if (right_files.empty()) {
      if (files.size() != 2)
        throw EvalError("difftest expects two files, or two file groups separated by --vs");
      p2.stages.push_back(p1.stages.back());
      p1.stages.pop_back();
    }
    require_valid(p1);
    require_valid(p2);
    r = equivalent_up_to(p1, p2, opt.bound);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    throw DifftestError{};
  }
  json report{
      {"schema", 1}, {"check", "difftest"}, {"bound", r.bound}, {"tested", r.tested}};
  switch (r.outcome) {
    case DiffReport::Outcome::EqualUpToBound:
      report["verdict"] = "equal-up-to-bound";
      emit(opt, report,
           "equal up to bound " + std::to_string(r.bound) + " (" + std::to_string(r.tested) +
               " inputs)\n");
      return;
    case DiffReport::Outcome::Counterexample:
      report["verdict"] = "counterexample";
      report["witness"] = {{"input", format_tree(*r.input)},
                           {"out1", format_tree(*r.out1)},
                           {"out2", format_tree(*r.out2)}};
      emit(opt, report,
           "counterexample: " + format_tree(*r.input) + "\n  left:  " + format_tree(*r.out1) +
               "\n  right: " + format_tree(*r.out2) + "\n");
      throw CheckFailed{};
    case DiffReport::Outcome::StageError:
      report["verdict"] = "stage-error";
      report["witness"] = {{"input", format_tree(*r.input)},
                           {"pipeline", r.error_pipeline},
                           {"error", r.error}};
      emit(opt, report,
           "stage error on " + format_tree(*r.input) + " in pipeline " +
               std::to_string(r.error_pipeline) + ": " + r.error + "\n");
      throw DifftestError{};
  }
}

void run_graph(const Options& opt) {
  Pipeline p = load_pipeline(opt.stages);
  const Att& a = expect_single_att(p, "graph");
  Tree input = parse_input(opt, a.input);
  std::string dot = dependency_graph_to_dot(att_dependency_graph(a, input));
  if (opt.dot_file.empty())
    std::cout << dot;
  else
    write_file(opt.dot_file, dot);
}

int run(int argc, char** argv) {
  CLI::App app{"a workbench for macro tree transducers, attributed tree transducers, and "
               "finite-state relabelings"};
  app.require_subcommand(1);

  Options opt;
  opt.stages = scan_stage_refs(argc, argv);

  auto add_common = [&](CLI::App* cmd) {
    // the stage flags are consumed via scan_stage_refs; registered here for
    // help and validation only
    cmd->add_option("--mtt", "macro tree transducer file (repeatable, ordered)")
        ->type_name("FILE")
        ->take_all();
    cmd->add_option("--att", "attributed tree transducer file")->type_name("FILE")->take_all();
    cmd->add_option("--brel", "bottom-up relabeling file")->type_name("FILE")->take_all();
    cmd->add_option("--trel", "top-down relabeling file")->type_name("FILE")->take_all();
    cmd->add_option("--input", opt.input_text, "input tree text");
    cmd->add_option("--input-file", opt.input_file, "file with the input tree");
    cmd->add_option("--rho", opt.rho_file, "parameter renaming file")->type_name("FILE");
    cmd->add_option("--lookaround", opt.lookaround_files,
                    "relabeling files applied before the transducer (repeatable)")
        ->type_name("FILE")
        ->take_all();
    cmd->add_option("--bound", opt.bound, "enumeration bound (default 6)");
    cmd->add_flag("--json", opt.json_mode, "machine-readable report");
    cmd->add_option("--dot", opt.dot_file, "write GraphViz output to FILE");
    cmd->add_option("--out", opt.out_prefix, "write conversion outputs to PREFIX.<kind>");
  };

  CLI::App* eval = app.add_subcommand("eval", "apply a pipeline to an input tree");
  add_common(eval);

  CLI::App* check = app.add_subcommand("check", "run a static or bounded check");
  check->require_subcommand(1);
  for (const char* name :
       {"fv", "consistency", "nondeleting", "nonerasing", "circular", "dynfv"})
    add_common(check->add_subcommand(name));
  std::string imp_state, imp_symbol, imp_path, perm_state;
  int perm_index = 1;
  CLI::App* importance = check->add_subcommand("importance", "is a rule position important");
  importance->add_option("state", imp_state)->required();
  importance->add_option("symbol", imp_symbol)->required();
  importance->add_option("path", imp_path, "dotted child indices, eps for the root")
      ->required();
  add_common(importance);
  CLI::App* permanent = check->add_subcommand("permanent", "is a parameter always important");
  permanent->add_option("state", perm_state)->required();
  permanent->add_option("index", perm_index)->required();
  add_common(permanent);

  CLI::App* convert = app.add_subcommand("convert", "run a construction and print the result");
  convert->require_subcommand(1);
  std::vector<std::string> gadget_left, gadget_right;
  for (const char* name : {"consistent", "att", "att-direct", "from-att", "nondeleting",
                           "nonerasing", "dynfv-att", "product"})
    add_common(convert->add_subcommand(name));
  CLI::App* gadget = convert->add_subcommand("gadget");
  gadget->add_option("left", gadget_left, "first pipeline files")->required();
  gadget->add_option("--vs", gadget_right, "second pipeline files")->required()->take_all();
  add_common(gadget);

  std::vector<std::string> diff_files, diff_right;
  CLI::App* difftest = app.add_subcommand("difftest", "bounded differential equivalence");
  difftest->add_option("files", diff_files, "pipeline files")->required();
  difftest->add_option("--vs", diff_right, "second pipeline files")->take_all();
  add_common(difftest);

  CLI::App* graph = app.add_subcommand("graph", "dependency graph of an att on an input");
  add_common(graph);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (eval->parsed()) run_eval(opt);
    if (check->parsed()) {
      if (check->get_subcommand("fv")->parsed()) run_check_fv(opt);
      if (check->get_subcommand("consistency")->parsed()) run_check_consistency(opt);
      if (check->get_subcommand("nondeleting")->parsed()) run_check_flag(opt, "nondeleting");
      if (check->get_subcommand("nonerasing")->parsed()) run_check_flag(opt, "nonerasing");
      if (check->get_subcommand("circular")->parsed()) run_check_circular(opt);
      if (check->get_subcommand("dynfv")->parsed()) run_check_dynfv(opt);
      if (importance->parsed()) run_check_importance(opt, imp_state, imp_symbol, imp_path);
      if (permanent->parsed()) run_check_permanent(opt, perm_state, perm_index);
    }
    if (convert->parsed()) {
      for (const char* name : {"consistent", "att", "att-direct", "from-att", "nondeleting",
                               "nonerasing", "dynfv-att", "product", "gadget"})
        if (convert->get_subcommand(name)->parsed())
          run_convert(opt, name, gadget_left, gadget_right);
    }
    if (difftest->parsed()) run_difftest(opt, diff_files, diff_right);
    if (graph->parsed()) run_graph(opt);
  } catch (const CheckFailed&) {
    return kExitSemantic;
  } catch (const DifftestError&) {
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSemantic;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
