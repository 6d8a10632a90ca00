#include "freecat/cli.hpp"

#include <chrono>
#include <fstream>
#include <memory>
#include <sstream>

#include "freecat/diagram.hpp"
#include "freecat/equality.hpp"
#include "freecat/error.hpp"
#include "freecat/lambda.hpp"
#include "freecat/lintype.hpp"
#include "freecat/mill.hpp"
#include "freecat/model.hpp"
#include "freecat/parse.hpp"
#include "freecat/rewrite.hpp"
#include "freecat/ski.hpp"
#include "freecat/typed_lambda.hpp"

#include "CLI11.hpp"

namespace freecat {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail_io("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) fail_io("error while reading '" + path + "'");
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail_io("cannot open '" + path + "' for writing");
  out << text;
  if (!out) fail_io("error while writing '" + path + "'");
}

int exit_for(const FcError& e) {
  switch (e.kind()) {
  case ErrKind::parse:
  case ErrKind::type:
    return 3;
  case ErrKind::invalid:
    return 1;
  case ErrKind::io:
  case ErrKind::internal:
    return 4;
  }
  return 4;
}

struct EqOptions {
  std::string strategy = "full";
  std::size_t fuel = default_fuel;
  std::uint64_t seed = 0;
  std::size_t random_models = 4;
  std::vector<std::string> model_files;
};

Strategy make_strategy(const EqOptions& opt,
                       const std::shared_ptr<const Signature>& sig) {
  Strategy st;
  auto kind = strategy_kind_from_name(opt.strategy);
  if (!kind)
    fail_invalid("unknown strategy '" + opt.strategy +
                 "'; expected nf, search, model, or full");
  st.kind = *kind;
  st.fuel = opt.fuel;
  st.seed = opt.seed;
  st.random_models = opt.random_models;
  for (const auto& f : opt.model_files)
    st.models.push_back(
        std::make_shared<const Model>(load_model_file(f, sig)));
  return st;
}

// Appends the verdict lines and returns the exit code.
int report_verdict(const EqVerdict& v, std::vector<std::string>& lines) {
  switch (v.answer) {
  case EqAnswer::equal:
    lines.push_back("equal (by " + v.by + ")");
    if (!v.note.empty()) lines.push_back("note: " + v.note);
    return 0;
  case EqAnswer::not_equal: {
    std::string line = "not-equal";
    if (v.witness) {
      line += ": refuted by model '" + v.witness->model + "' at basis input " +
              std::to_string(v.witness->input_index);
    }
    lines.push_back(line);
    if (v.witness && !v.witness->detail.empty())
      lines.push_back("witness: " + v.witness->detail);
    return 1;
  }
  case EqAnswer::unknown:
    lines.push_back("unknown" + (v.note.empty() ? "" : ": " + v.note));
    return 2;
  }
  return 2;
}

struct Driver {
  RunReport& report;

  void say(std::string line) { report.lines.push_back(std::move(line)); }

  int cmd_check(const std::string& sig_path) {
    Signature sig = parse_signature(read_file(sig_path));
    std::vector<std::string> problems = validate_signature(sig);
    if (problems.empty()) {
      say("ok: mode " + std::string(mode_name(sig.mode)) + ", " +
          std::to_string(sig.objects.size()) + " objects, " +
          std::to_string(sig.generators.size()) + " generators, " +
          std::to_string(sig.terms.size()) + " named terms");
      return 0;
    }
    for (const auto& p : problems) say("invalid: " + p);
    return 1;
  }

  int cmd_eq(const std::string& sig_path, const std::string& lhs,
             const std::string& rhs, const EqOptions& opt) {
    auto sig = std::make_shared<const Signature>(
        parse_signature(read_file(sig_path)));
    MorPtr t1 = parse_mor(lhs, *sig);
    MorPtr t2 = parse_mor(rhs, *sig);
    Strategy st = make_strategy(opt, sig);
    EqVerdict v = eq_decide(t1, t2, *sig, st);
    return report_verdict(v, report.lines);
  }

  int cmd_normalize(const std::string& sig_path, const std::string& term,
                    std::size_t fuel) {
    Signature sig = parse_signature(read_file(sig_path));
    MorPtr t = parse_mor(term, sig);
    NormalizeResult r = beta_eta_normalize(t, sig, fuel);
    say(print_mor(r.term, sig.mode));
    say("steps: " + std::to_string(r.steps));
    say(r.normal ? "normal: yes" : "normal: no (fuel exhausted)");
    return r.normal ? 0 : 2;
  }

  int cmd_eval(const std::string& sig_path, const std::string& model_path,
               const std::string& term) {
    auto sig = std::make_shared<const Signature>(
        parse_signature(read_file(sig_path)));
    Model m = load_model_file(model_path, sig);
    MorPtr t = parse_mor(term, *sig);
    ConcreteMor v = eval_mor(m, t);
    say(concrete_to_string(v));
    return 0;
  }

  int cmd_coherence(const std::string& mode_str, const std::string& sig_path,
                    const std::string& model_path, std::size_t samples,
                    std::uint64_t seed) {
    std::shared_ptr<const Signature> sig;
    Mode mode = Mode::monoidal;
    if (!sig_path.empty()) {
      sig = std::make_shared<const Signature>(
          parse_signature(read_file(sig_path)));
      mode = sig->mode;
      if (!mode_str.empty()) {
        auto m = mode_from_name(mode_str);
        if (!m) fail_invalid("unknown mode '" + mode_str + "'");
        if (*m != mode)
          fail_invalid("--mode disagrees with the signature's mode");
      }
    } else {
      if (mode_str.empty()) fail_invalid("--mode or --sig is required");
      auto m = mode_from_name(mode_str);
      if (!m) fail_invalid("unknown mode '" + mode_str + "'");
      mode = *m;
      // a small generic signature to exercise the laws
      Signature s;
      s.mode = mode;
      s.objects = {"A", "B"};
      s.generators.push_back({"f", t_basic("A"), t_basic("B")});
      s.generators.push_back({"g", t_basic("B"), t_basic("A")});
      sig = std::make_shared<const Signature>(std::move(s));
    }
    Model m;
    if (!model_path.empty()) {
      m = load_model_file(model_path, sig);
    } else if (model_supports_mode(ModelKind::matrix, mode)) {
      m = make_random_matrix_model(sig, seed);
    } else {
      m = make_random_finset_model(sig, seed);
    }
    LawReport lr = check_model_laws(m, samples, seed);
    say("model: " + m.name + " (" +
        std::string(model_kind_name(m.kind)) + ")");
    say("checked " + std::to_string(lr.checked) + " law instances across " +
        std::to_string(lr.laws.size()) + " laws");
    for (const auto& f : lr.failures)
      say("failure: " + f.law + " sample " + std::to_string(f.sample) + ": " +
          f.detail);
    if (lr.ok()) {
      say("all laws hold");
      return 0;
    }
    return 1;
  }

  int cmd_mill_check(const std::string& path, const std::string& sig_path) {
    std::optional<Signature> sig;
    if (!sig_path.empty()) sig = parse_signature(read_file(sig_path));
    auto proofs =
        parse_proof_decls(read_file(path), sig ? &*sig : nullptr);
    if (proofs.empty()) fail_invalid("no proofs in '" + path + "'");
    bool all_ok = true;
    for (const auto& np : proofs) {
      ProofReport r = check_proof(np.proof, sig ? &*sig : nullptr);
      Mode mode = sig ? sig->mode : Mode::closed_symmetric;
      if (r.ok()) {
        say(np.name + ": ok   " +
            print_sequent(np.proof->conclusion, mode));
      } else {
        all_ok = false;
        for (const auto& issue : r.issues)
          say(np.name + ": at " + issue.path + ": " + issue.message);
      }
    }
    return all_ok ? 0 : 1;
  }

  int cmd_mill_compile(const std::string& path, const std::string& sig_path,
                       const std::string& which) {
    Signature sig;
    sig.mode = Mode::closed_symmetric;
    if (!sig_path.empty()) sig = parse_signature(read_file(sig_path));
    auto proofs = parse_proof_decls(
        read_file(path), sig_path.empty() ? nullptr : &sig);
    if (proofs.empty()) fail_invalid("no proofs in '" + path + "'");
    bool found = which.empty();
    for (const auto& np : proofs) {
      if (!which.empty() && np.name != which) continue;
      found = true;
      MorPtr m = proof_to_mor(np.proof, sig);
      say(np.name + " = " + print_mor(m, sig.mode));
    }
    if (!found) fail_invalid("no proof named '" + which + "' in '" + path +
                             "'");
    return 0;
  }

  int cmd_lam_run(const std::string& path, std::size_t fuel) {
    LambdaFile f = parse_lambda_file(read_file(path));
    UPtr t = f.main_term();
    if (!t) fail_invalid("'" + path + "' contains no term to run");
    UNormResult r = normalize_untyped(t, fuel);
    say(print_untyped(r.term));
    if (auto n = church_decode(r.term))
      say("church: " + std::to_string(*n));
    say("steps: " + std::to_string(r.steps));
    if (!r.normal) {
      say("normal: no (fuel exhausted)");
      return 2;
    }
    return 0;
  }

  int cmd_lam_ski(const std::string& path) {
    LambdaFile f = parse_lambda_file(read_file(path));
    UPtr t = f.main_term();
    if (!t) fail_invalid("'" + path + "' contains no term");
    say(print_ski(ski_eliminate(t)));
    return 0;
  }

  int cmd_lam_church(const std::string& n_str) {
    std::size_t n = 0;
    try {
      std::size_t pos = 0;
      n = std::stoull(n_str, &pos);
      if (pos != n_str.size()) throw std::invalid_argument(n_str);
    } catch (const std::exception&) {
      fail_parse("'" + n_str + "' is not a number");
    }
    if (n > 10000) fail_invalid("church numeral too large");
    say(print_untyped(church_encode(n)));
    return 0;
  }

  int cmd_lin_cpvp(const std::string& path, const std::string& term) {
    Signature sig = parse_signature(read_file(path));
    LinPtr t = parse_lterm(term, sig);
    lin_typecheck(t);
    CpVp d = cpvp(t);
    say("cp: " + print_comb(d.cp));
    say("vp: " + print_lterm(d.vp));
    return 0;
  }

  int cmd_lin_eq(const std::string& path, const std::string& lhs,
                 const std::string& rhs, const EqOptions& opt) {
    auto sig = std::make_shared<const Signature>(
        parse_signature(read_file(path)));
    LinPtr t1 = parse_lterm(lhs, *sig);
    LinPtr t2 = parse_lterm(rhs, *sig);
    Strategy st = make_strategy(opt, sig);
    EqVerdict v = lin_equiv_terms(t1, t2, *sig, st);
    return report_verdict(v, report.lines);
  }

  int cmd_diagram(const std::string& sig_path, const std::string& term,
                  const std::string& format, const std::string& out) {
    Signature sig = parse_signature(read_file(sig_path));
    MorPtr t = parse_mor(term, sig);
    DiagramGraph g = export_diagram(t, sig);
    std::string doc = render_diagram(g, format);
    if (out == "-" || out.empty()) {
      std::istringstream is(doc);
      std::string line;
      while (std::getline(is, line)) say(std::move(line));
    } else {
      write_file(out, doc);
      say("wrote " + out + " (" + std::to_string(doc.size()) + " bytes)");
    }
    return 0;
  }
};

} // namespace

RunReport run_command(const std::vector<std::string>& args) {
  RunReport report;
  report.command = "freecat";
  for (const auto& a : args) report.command += " " + a;
  auto start = std::chrono::steady_clock::now();

  CLI::App app{"freecat: terms, proofs and diagrams over free categories"};
  app.require_subcommand(1);

  // check
  std::string check_sig;
  auto* c_check = app.add_subcommand("check", "validate a signature file");
  c_check->add_option("sig", check_sig, "signature file")->required();

  // eq
  std::string eq_sig, eq_lhs, eq_rhs;
  EqOptions eq_opt;
  auto* c_eq = app.add_subcommand("eq", "decide equality of two terms");
  c_eq->add_option("sig", eq_sig)->required();
  c_eq->add_option("--lhs", eq_lhs)->required();
  c_eq->add_option("--rhs", eq_rhs)->required();
  c_eq->add_option("--strategy", eq_opt.strategy);
  c_eq->add_option("--fuel", eq_opt.fuel);
  c_eq->add_option("--model", eq_opt.model_files);
  c_eq->add_option("--seed", eq_opt.seed);
  c_eq->add_option("--random-models", eq_opt.random_models);

  // normalize
  std::string nm_sig, nm_term;
  std::size_t nm_fuel = default_fuel;
  auto* c_norm = app.add_subcommand("normalize", "rewrite to normal form");
  c_norm->add_option("sig", nm_sig)->required();
  c_norm->add_option("--term", nm_term)->required();
  c_norm->add_option("--fuel", nm_fuel);

  // eval
  std::string ev_sig, ev_model, ev_term;
  auto* c_eval = app.add_subcommand("eval", "evaluate a term in a model");
  c_eval->add_option("sig", ev_sig)->required();
  c_eval->add_option("--model", ev_model)->required();
  c_eval->add_option("--term", ev_term)->required();

  // coherence
  std::string co_mode, co_sig, co_model;
  std::size_t co_samples = 20;
  std::uint64_t co_seed = 0;
  auto* c_coh = app.add_subcommand("coherence", "run the law suite");
  c_coh->add_option("--mode", co_mode);
  c_coh->add_option("--sig", co_sig);
  c_coh->add_option("--model", co_model);
  c_coh->add_option("--samples", co_samples);
  c_coh->add_option("--seed", co_seed);

  // mill
  auto* c_mill = app.add_subcommand("mill", "sequent proofs");
  c_mill->require_subcommand(1);
  std::string mc_file, mc_sig;
  auto* c_mill_check = c_mill->add_subcommand("check", "check proofs");
  c_mill_check->add_option("file", mc_file)->required();
  c_mill_check->add_option("--sig", mc_sig);
  std::string mp_file, mp_sig, mp_name;
  auto* c_mill_comp =
      c_mill->add_subcommand("compile", "compile proofs to terms");
  c_mill_comp->add_option("file", mp_file)->required();
  c_mill_comp->add_option("--sig", mp_sig);
  c_mill_comp->add_option("--proof", mp_name);

  // lam
  auto* c_lam = app.add_subcommand("lam", "untyped lambda calculus");
  c_lam->require_subcommand(1);
  std::string lr_file;
  std::size_t lr_fuel = 10000;
  auto* c_lam_run = c_lam->add_subcommand("run", "normalize the main term");
  c_lam_run->add_option("file", lr_file)->required();
  c_lam_run->add_option("--fuel", lr_fuel);
  std::string ls_file;
  auto* c_lam_ski =
      c_lam->add_subcommand("ski", "eliminate abstractions to combinators");
  c_lam_ski->add_option("file", ls_file)->required();
  std::string lc_n;
  auto* c_lam_church = c_lam->add_subcommand("church", "print a numeral");
  c_lam_church->add_option("n", lc_n)->required();

  // lin
  auto* c_lin = app.add_subcommand("lin", "linear type theories");
  c_lin->require_subcommand(1);
  std::string lv_file, lv_term;
  auto* c_lin_cpvp =
      c_lin->add_subcommand("cpvp", "combinator/variable decomposition");
  c_lin_cpvp->add_option("file", lv_file)->required();
  c_lin_cpvp->add_option("--term", lv_term)->required();
  std::string le_file, le_lhs, le_rhs;
  EqOptions le_opt;
  auto* c_lin_eq = c_lin->add_subcommand("eq", "decide linear-term equality");
  c_lin_eq->add_option("file", le_file)->required();
  c_lin_eq->add_option("--lhs", le_lhs)->required();
  c_lin_eq->add_option("--rhs", le_rhs)->required();
  c_lin_eq->add_option("--fuel", le_opt.fuel);
  c_lin_eq->add_option("--seed", le_opt.seed);
  c_lin_eq->add_option("--model", le_opt.model_files);
  c_lin_eq->add_option("--strategy", le_opt.strategy);

  // diagram
  std::string dg_sig, dg_term, dg_format = "json", dg_out = "-";
  auto* c_diag = app.add_subcommand("diagram", "export a string diagram");
  c_diag->add_option("sig", dg_sig)->required();
  c_diag->add_option("--term", dg_term)->required();
  c_diag->add_option("--format", dg_format)
      ->check(CLI::IsMember({"json", "dot", "svg"}));
  c_diag->add_option("-o,--out", dg_out);

  Driver d{report};
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev); // CLI11 consumes reversed argument vectors
    if (*c_check) report.exit_code = d.cmd_check(check_sig);
    else if (*c_eq) report.exit_code = d.cmd_eq(eq_sig, eq_lhs, eq_rhs, eq_opt);
    else if (*c_norm) report.exit_code = d.cmd_normalize(nm_sig, nm_term, nm_fuel);
    else if (*c_eval) report.exit_code = d.cmd_eval(ev_sig, ev_model, ev_term);
    else if (*c_coh)
      report.exit_code = d.cmd_coherence(co_mode, co_sig, co_model, co_samples, co_seed);
    else if (*c_mill_check) report.exit_code = d.cmd_mill_check(mc_file, mc_sig);
    else if (*c_mill_comp)
      report.exit_code = d.cmd_mill_compile(mp_file, mp_sig, mp_name);
    else if (*c_lam_run) report.exit_code = d.cmd_lam_run(lr_file, lr_fuel);
    else if (*c_lam_ski) report.exit_code = d.cmd_lam_ski(ls_file);
    else if (*c_lam_church) report.exit_code = d.cmd_lam_church(lc_n);
    else if (*c_lin_cpvp) report.exit_code = d.cmd_lin_cpvp(lv_file, lv_term);
    else if (*c_lin_eq)
      report.exit_code = d.cmd_lin_eq(le_file, le_lhs, le_rhs, le_opt);
    else if (*c_diag)
      report.exit_code = d.cmd_diagram(dg_sig, dg_term, dg_format, dg_out);
  } catch (const CLI::ParseError& e) {
    std::ostringstream os;
    int code = app.exit(e, os, os);
    std::istringstream is(os.str());
    std::string line;
    while (std::getline(is, line)) report.lines.push_back(line);
    // --help and friends exit 0; any real parse problem maps to 3
    report.exit_code = code == 0 ? 0 : 3;
  } catch (const FcError& e) {
    report.lines.push_back(std::string(err_kind_name(e.kind())) +
                           " error: " + e.what());
    report.exit_code = exit_for(e);
  }

  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

} // namespace freecat
