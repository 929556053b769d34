#include "infnom/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <json.hpp>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "infnom/errors.hpp"
#include "infnom/infinite.hpp"
#include "infnom/lambda/library.hpp"
#include "infnom/lambda/reduce.hpp"
#include "infnom/lambda/syntax.hpp"
#include "infnom/signature.hpp"
#include "infnom/trees.hpp"

namespace infnom::cli {

namespace {

using nlohmann::json;
using lambda::Parsed;
using lambda::Term;

struct Flags {
  std::size_t depth = 8;
  std::size_t fuel = 256;
  bool assume_bot = false;
  bool json = false;
  bool unicode = false;
  bool alpha = false;
  std::string defs_file;
  std::string sig_file;
  std::string strategy = "head";
  std::string tree;
  std::vector<std::string> terms;
};

/// Flag-level failure, reported like a parse error.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json layer_json(const RawTerm& t) {
  if (t.is_star()) return {{"star", true}};
  if (t.is_var()) return {{"var", t.atom().name()}};
  json args = json::array();
  for (const auto& a : t.args()) {
    json binders = json::array();
    for (Atom b : a.binders) binders.push_back(b.name());
    args.push_back({{"binders", binders}, {"body", layer_json(a.body)}});
  }
  return {{"op", t.name()}, {"args", args}};
}

class Session {
 public:
  Session(const Flags& f, std::ostream& out) : f_(f), out_(out) {
    if (!f.defs_file.empty()) defs_ = lambda::Definitions::parse(read_file(f.defs_file));
    if (!f.sig_file.empty()) sig_ = BindingSignature::parse(read_file(f.sig_file));
  }

  void dispatch(const std::string& cmd) {
    static const std::map<std::string, void (Session::*)()> table = {
        {"parse", &Session::parse},   {"canon", &Session::canon},       {"fv", &Session::fv},
        {"truncate", &Session::trunc}, {"subst", &Session::subst},      {"reduce", &Session::reduce},
        {"bt", &Session::tree},       {"llt", &Session::tree},          {"bet", &Session::tree},
        {"alpha-eq", &Session::alpha}, {"dist", &Session::dist},        {"limit-rep", &Session::limit},
    };
    cmd_ = cmd;
    (this->*table.at(cmd))();
  }

 private:
  Parsed input(const std::string& src) const {
    if (src == "@ogre") return Parsed{lambda::ogre()};
    if (src == "@ogre-rational") return Parsed{lambda::ogre_rational()};
    if (src == "@infbv") return Parsed{lambda::infbv()};
    if (src == "@pinfbv") return Parsed{lambda::to_raw(lambda::pinfbv())};
    if (src == "@allconst") return Parsed{lambda::allconst()};
    if (src == "@allfv") return Parsed{lambda::allfv()};
    if (src.starts_with("@")) throw ParseError("unknown built-in term " + src, 0);
    return lambda::parse(src, defs_ ? &*defs_ : nullptr);
  }

  Term term(const std::string& src) const { return input(src).term(); }

  InfTerm inf(const std::string& src) const { return input(src).inf(); }

  RawTerm generic(const std::string& src) const { return lambda::parse_generic(src, *sig_); }

  /// Finite terms are shown whole, others truncated at --depth.
  RawTerm shown(const Parsed& p) const { return p.is_finite() ? p.raw() : truncate(p.inf(), f_.depth); }

  RawTerm shown(const Term& t) const {
    try {
      return lambda::to_raw(t);
    } catch (const NotRational&) {
      return truncate(lambda::to_inf(t), f_.depth);
    }
  }

  std::string text(const RawTerm& t) const {
    if (sig_) return lambda::print_generic(t);
    return lambda::print(t, {.unicode = f_.unicode, .assume_bot = f_.assume_bot});
  }

  void emit_term(const RawTerm& t, bool unknown = false, json extra = json::object()) {
    if (!f_.json) {
      out_ << text(t) << "\n";
      return;
    }
    json j = {{"kind", cmd_}};
    j.update(extra);
    j["term"] = layer_json(f_.assume_bot ? trees::assume_bottom(t) : t);
    j["status"] = unknown ? "unknown" : "resolved";
    out_ << j.dump() << "\n";
  }

  void emit_value(const std::string& field, json value, const std::string& plain) {
    if (f_.json)
      out_ << json{{"kind", cmd_}, {field, value}}.dump() << "\n";
    else
      out_ << plain << "\n";
  }

  void parse() { emit_term(sig_ ? generic(f_.terms[0]) : shown(input(f_.terms[0]))); }

  void canon() { emit_term(canonicalize(sig_ ? generic(f_.terms[0]) : shown(input(f_.terms[0]))).canonical()); }

  void fv() {
    Parsed p = input(f_.terms[0]);
    AtomSet s = p.is_finite() ? infnom::fv(p.raw()) : fv_exact(p.inf());
    json atoms = json::array();
    std::string plain = "{";
    for (Atom a : s) {
      if (!atoms.empty()) plain += ", ";
      atoms.push_back(a.name());
      plain += a.name();
    }
    emit_value("atoms", atoms, plain + "}");
  }

  void trunc() { emit_term(truncate(inf(f_.terms[0]), f_.depth)); }

  void subst() {
    Parsed x = lambda::parse(f_.terms[1]);
    if (!x.is_finite() || !x.raw().is_var()) throw ParseError("expected a variable, got " + f_.terms[1], 0);
    emit_term(shown(lambda::subst(term(f_.terms[0]), x.raw().atom(), term(f_.terms[2]))));
  }

  void reduce() {
    static const std::map<std::string, lambda::Strategy> strategies = {
        {"head", lambda::Strategy::Head}, {"whead", lambda::Strategy::WeakHead}, {"top", lambda::Strategy::Top}};
    auto out = lambda::reduce(term(f_.terms[0]), strategies.at(f_.strategy), f_.fuel);
    using K = lambda::ReductionOutcome::Kind;
    const char* outcome = out.kind == K::Reached ? "reached" : out.kind == K::Diverges ? "diverges" : "fuel-exhausted";
    RawTerm shown_term = shown(out.term);
    if (f_.json) {
      emit_term(shown_term, out.kind == K::FuelExhausted, {{"outcome", outcome}, {"steps", out.steps}});
      return;
    }
    out_ << outcome << " after " << out.steps << " steps: " << text(shown_term) << "\n";
  }

  void tree() {
    trees::TreeKind kind = cmd_ == "bt" ? trees::TreeKind::Bohm
                           : cmd_ == "llt" ? trees::TreeKind::LevyLongo
                                           : trees::TreeKind::Berarducci;
    trees::TreeOptions o;
    o.fuel = f_.fuel;
    TruncTerm t = truncate(trees::tree(kind, term(f_.terms[0]), o), f_.depth);
    emit_term(t, trees::status(t) == trees::NodeStatus::Unknown);
  }

  void alpha() {
    bool eq;
    if (sig_) {
      eq = alpha_eq(generic(f_.terms[0]), generic(f_.terms[1]));
    } else if (!f_.tree.empty()) {
      trees::TreeKind kind = f_.tree == "bt" ? trees::TreeKind::Bohm
                             : f_.tree == "llt" ? trees::TreeKind::LevyLongo
                                                : trees::TreeKind::Berarducci;
      eq = trees::bisim_at(kind, term(f_.terms[0]), term(f_.terms[1]), f_.depth, f_.fuel);
    } else {
      Parsed a = input(f_.terms[0]), b = input(f_.terms[1]);
      eq = a.is_finite() && b.is_finite() ? alpha_eq(a.raw(), b.raw()) : alpha_eq_at(a.inf(), b.inf(), f_.depth);
    }
    emit_value("result", eq, eq ? "true" : "false");
  }

  void dist() {
    if (f_.depth == 0) throw UsageError("--depth must be positive for dist");
    InfTerm a = inf(f_.terms[0]), b = inf(f_.terms[1]);
    DistanceBound d = f_.alpha ? dist_alpha(a, b, f_.depth) : infnom::dist(a, b, f_.depth);
    if (f_.json)
      out_ << json{{"kind", cmd_}, {"exact", d.exact()}, {"value", d.value.str()}}.dump() << "\n";
    else
      out_ << d.str() << "\n";
  }

  void limit() {
    ClassChain chain = f_.terms[0] == "@no-limit" ? lambda::no_limit_chain() : truncation_chain(inf(f_.terms[0]));
    emit_term(represent_limit(chain, f_.depth));
  }

  const Flags& f_;
  std::ostream& out_;
  std::optional<lambda::Definitions> defs_;
  std::optional<BindingSignature> sig_;
  std::string cmd_;
};

struct CommandInfo {
  const char* name;
  const char* help;
  std::size_t terms;
};

const CommandInfo kCommands[] = {
    {"parse", "parse and print a term", 1},
    {"canon", "canonical representative of the alpha class", 1},
    {"fv", "free variables", 1},
    {"truncate", "truncation at --depth", 1},
    {"subst", "M x N: capture-avoiding M[x := N]", 3},
    {"reduce", "reduce with --strategy head|whead|top", 1},
    {"bt", "Boehm tree", 1},
    {"llt", "Levy-Longo tree", 1},
    {"bet", "Berarducci tree", 1},
    {"alpha-eq", "alpha-equivalence, optionally of trees via --tree", 2},
    {"dist", "distance, capped at --depth; --alpha for classes", 2},
    {"limit-rep", "safe representative of the limit at --depth", 1},
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Flags f;
  CLI::App app{"Nominal infinitary terms and lambda trees", "infnom"};
  app.require_subcommand(1);
  for (const CommandInfo& c : kCommands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    std::string cmd = c.name;
    sub->add_option("--depth", f.depth, "truncation depth")->check(CLI::NonNegativeNumber);
    sub->add_option("--fuel", f.fuel, "reduction steps per node")->check(CLI::PositiveNumber);
    sub->add_flag("--assume-bot", f.assume_bot, "render unknown nodes as bottom");
    sub->add_flag("--json", f.json, "JSON output");
    sub->add_flag("--unicode", f.unicode, "unicode output");
    sub->add_option("--defs", f.defs_file, "file of `name = term` definitions");
    if (cmd == "parse" || cmd == "canon" || cmd == "alpha-eq")
      sub->add_option("--sig", f.sig_file, "binding signature file for generic terms");
    if (cmd == "reduce")
      sub->add_option("--strategy", f.strategy)->check(CLI::IsMember({"head", "whead", "top"}));
    if (cmd == "alpha-eq") sub->add_option("--tree", f.tree)->check(CLI::IsMember({"bt", "llt", "bet"}));
    if (cmd == "dist") sub->add_flag("--alpha", f.alpha, "distance between alpha classes");
    sub->add_option("terms", f.terms, "terms")->required()->expected(static_cast<int>(c.terms));
  }

  std::vector<const char*> argv{"infnom"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    Session s(f, out);
    s.dispatch(app.get_subcommands().front()->get_name());
    return 0;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const ArityError& e) {
    err << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const SupportViolation& e) {
    err << "support violation: " << e.what() << "\n";
    return 2;
  } catch (const Inconclusive& e) {
    err << "inconclusive: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 4;
  }
}

}  // namespace infnom::cli
