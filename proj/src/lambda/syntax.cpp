#include "infnom/lambda/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <optional>

#include "infnom/errors.hpp"

namespace infnom::lambda {

void Definitions::add(std::string name, std::string source) {
  entries_.emplace_back(std::move(name), std::move(source));
}

Definitions Definitions::parse(std::string_view text) {
  Definitions defs;
  std::size_t offset = 0;
  while (offset <= text.size()) {
    std::size_t end = text.find('\n', offset);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(offset, end - offset);
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first != std::string_view::npos && line.substr(first, 2) != "--") {
      auto eq = line.find('=');
      if (eq == std::string_view::npos) throw ParseError("expected `name = term`", offset);
      std::string_view name = line.substr(0, eq);
      while (!name.empty() && std::isspace(static_cast<unsigned char>(name.front())))
        name.remove_prefix(1);
      while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back())))
        name.remove_suffix(1);
      if (name.empty()) throw ParseError("definition without a name", offset);
      defs.add(std::string(name), std::string(line.substr(eq + 1)));
    }
    offset = end + 1;
  }
  return defs;
}

const Definitions& prelude() {
  static const Definitions defs = [] {
    Definitions d;
    d.add("fix", "\\f. (\\x. f (x x)) (\\x. f (x x))");
    return d;
  }();
  return defs;
}

InfTerm Parsed::inf() const {
  if (auto r = std::get_if<RawTerm>(&value)) return embed(*r);
  return std::get<InfTerm>(value);
}

Term Parsed::term() const {
  if (auto r = std::get_if<RawTerm>(&value)) return from_raw(*r);
  return Term::lazy(std::get<InfTerm>(value));
}

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class Tok { Lambda, Dot, LParen, RParen, Bot, BotQ, Const, Star, Ident, Let, Rec, And, In, Eq, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

constexpr std::string_view kLambdaUtf8 = "\xCE\xBB";
constexpr std::string_view kBotUtf8 = "\xE2\x8A\xA5";

std::vector<Token> lex(std::string_view src, std::size_t base) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto at = [&](std::string_view s) { return src.substr(i, s.size()) == s; };
  while (i < src.size()) {
    char c = src[i];
    std::size_t pos = base + i;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '\\') {
      out.push_back({Tok::Lambda, "\\", pos});
      ++i;
    } else if (at(kLambdaUtf8)) {
      out.push_back({Tok::Lambda, "\\", pos});
      i += kLambdaUtf8.size();
    } else if (at("_|_?")) {
      out.push_back({Tok::BotQ, "_|_?", pos});
      i += 4;
    } else if (at("_|_")) {
      out.push_back({Tok::Bot, "_|_", pos});
      i += 3;
    } else if (at(kBotUtf8)) {
      i += kBotUtf8.size();
      if (i < src.size() && src[i] == '?') {
        out.push_back({Tok::BotQ, "_|_?", pos});
        ++i;
      } else {
        out.push_back({Tok::Bot, "_|_", pos});
      }
    } else if (c == '.' || c == '(' || c == ')' || c == '*' || c == '=') {
      Tok k = c == '.' ? Tok::Dot : c == '(' ? Tok::LParen : c == ')' ? Tok::RParen
              : c == '*' ? Tok::Star : Tok::Eq;
      out.push_back({k, std::string(1, c), pos});
      ++i;
    } else if (c == '#') {
      std::size_t j = i + 1;
      while (j < src.size() && ident_char(src[j])) ++j;
      if (j == i + 1) throw ParseError("constant name expected after `#`", pos);
      out.push_back({Tok::Const, std::string(src.substr(i + 1, j - i - 1)), pos});
      i = j;
    } else if (ident_start(c)) {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      std::string word(src.substr(i, j - i));
      Tok k = word == "let" ? Tok::Let : word == "rec" ? Tok::Rec : word == "and" ? Tok::And
              : word == "in" ? Tok::In : Tok::Ident;
      out.push_back({k, std::move(word), pos});
      i = j;
    } else {
      throw ParseError(std::string("unexpected character `") + c + "`", pos);
    }
  }
  out.push_back({Tok::End, "", base + src.size()});
  return out;
}

// ---------------------------------------------------------------------------
// Surface syntax

struct Syn {
  enum class Kind { Var, Abs, App, Bot, BotQ, Const, Star, Let };
  Kind kind;
  std::string name;
  std::size_t pos = 0;
  std::vector<std::unique_ptr<Syn>> kids;
  /// Labels of a Let; kids holds their bodies followed by the let body.
  std::vector<std::pair<std::string, std::size_t>> labels;
};

using SynPtr = std::unique_ptr<Syn>;

SynPtr node(Syn::Kind k, std::size_t pos, std::string name = {}) {
  auto s = std::make_unique<Syn>();
  s->kind = k;
  s->pos = pos;
  s->name = std::move(name);
  return s;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  SynPtr parse_all() {
    SynPtr t = term();
    if (peek().kind != Tok::End) fail("unexpected `" + peek().text + "`");
    return t;
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  Token next() { return toks_[i_++]; }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().pos); }
  Token expect(Tok k, const char* what) {
    if (peek().kind != k) fail(std::string("expected ") + what);
    return next();
  }

  static bool atom_start(Tok k) {
    return k == Tok::Ident || k == Tok::Const || k == Tok::Bot || k == Tok::BotQ ||
           k == Tok::Star || k == Tok::LParen;
  }

  SynPtr term() {
    if (peek().kind == Tok::Lambda) {
      std::size_t pos = next().pos;
      std::vector<Token> binders;
      while (peek().kind == Tok::Ident) binders.push_back(next());
      if (binders.empty()) fail("expected a binder name");
      expect(Tok::Dot, "`.` after binders");
      SynPtr body = term();
      for (auto it = binders.rbegin(); it != binders.rend(); ++it) {
        auto abs = node(Syn::Kind::Abs, it == binders.rbegin() ? it->pos : pos, it->text);
        abs->kids.push_back(std::move(body));
        body = std::move(abs);
      }
      return body;
    }
    if (peek().kind == Tok::Let) {
      auto let = node(Syn::Kind::Let, next().pos);
      expect(Tok::Rec, "`rec` after `let`");
      do {
        Token label = expect(Tok::Ident, "a label");
        expect(Tok::Eq, "`=`");
        let->labels.emplace_back(label.text, label.pos);
        let->kids.push_back(term());
      } while (peek().kind == Tok::And && (next(), true));
      expect(Tok::In, "`in` or `and`");
      let->kids.push_back(term());
      return let;
    }
    return application();
  }

  SynPtr application() {
    SynPtr f = atom();
    for (;;) {
      SynPtr a;
      if (atom_start(peek().kind)) {
        a = atom();
      } else if (peek().kind == Tok::Lambda || peek().kind == Tok::Let) {
        a = term();
      } else {
        break;
      }
      auto app = node(Syn::Kind::App, f->pos);
      app->kids.push_back(std::move(f));
      app->kids.push_back(std::move(a));
      f = std::move(app);
    }
    return f;
  }

  SynPtr atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Ident:
        return node(Syn::Kind::Var, t.pos, next().text);
      case Tok::Const:
        return node(Syn::Kind::Const, t.pos, next().text);
      case Tok::Bot:
        return node(Syn::Kind::Bot, next().pos);
      case Tok::BotQ:
        return node(Syn::Kind::BotQ, next().pos);
      case Tok::Star:
        return node(Syn::Kind::Star, next().pos);
      case Tok::LParen: {
        next();
        SynPtr inner = term();
        expect(Tok::RParen, "`)`");
        return inner;
      }
      case Tok::End:
        fail("unexpected end of input");
      default:
        fail("unexpected `" + t.text + "`");
    }
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

// ---------------------------------------------------------------------------
// Elaboration into an equation system

class Elaborator {
 public:
  std::size_t add_group(const std::vector<std::pair<std::string, const Syn*>>& group,
                        const std::vector<std::size_t>& positions) {
    std::size_t first = label_root_.size();
    for (std::size_t k = 0; k < group.size(); ++k) {
      label_root_.push_back(std::nullopt);
      label_name_.push_back(group[k].first);
      label_pos_.push_back(positions[k]);
      scope_.push_back({group[k].first, true, first + k});
    }
    for (std::size_t k = 0; k < group.size(); ++k) label_root_[first + k] = compile(*group[k].second);
    return first;
  }

  std::size_t compile(const Syn& s) {
    switch (s.kind) {
      case Syn::Kind::Var: {
        for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
          if (it->name != s.name) continue;
          if (it->label) return push_ref(it->label_id, s.pos);
          break;
        }
        return push_layer(VarLayer{Atom::named(s.name)}, s.pos);
      }
      case Syn::Kind::Abs: {
        scope_.push_back({s.name, false, 0});
        std::size_t body = compile(*s.kids[0]);
        scope_.pop_back();
        return push_layer(op_layer<std::size_t>(std::string(kAbs), {{{Atom::named(s.name)}, body}}),
                          s.pos);
      }
      case Syn::Kind::App: {
        std::size_t f = compile(*s.kids[0]);
        std::size_t a = compile(*s.kids[1]);
        return push_layer(op_layer<std::size_t>(std::string(kApp), {{{}, f}, {{}, a}}), s.pos);
      }
      case Syn::Kind::Bot:
        return push_layer(op_layer<std::size_t>(std::string(kBot)), s.pos);
      case Syn::Kind::BotQ:
        return push_layer(op_layer<std::size_t>(std::string(kBotUnknown)), s.pos);
      case Syn::Kind::Const:
        return push_layer(op_layer<std::size_t>(constant_op(s.name)), s.pos);
      case Syn::Kind::Star: {
        states_.push_back({State::Kind::Star, VarLayer{}, 0, s.pos});
        return states_.size() - 1;
      }
      case Syn::Kind::Let: {
        std::vector<std::pair<std::string, const Syn*>> group;
        std::vector<std::size_t> positions;
        for (std::size_t k = 0; k < s.labels.size(); ++k) {
          group.emplace_back(s.labels[k].first, s.kids[k].get());
          positions.push_back(s.labels[k].second);
        }
        std::size_t depth = scope_.size();
        add_group(group, positions);
        std::size_t body = compile(*s.kids.back());
        scope_.resize(depth);
        return body;
      }
    }
    return 0;
  }

  Parsed finish(std::size_t root) {
    root = resolve(root);
    std::map<std::size_t, std::size_t> index;
    std::vector<std::size_t> order;
    bool cyclic = false, has_star = false;
    enum class Mark { Grey, Black };
    std::map<std::size_t, Mark> mark;
    auto visit = [&](auto&& self, std::size_t c) -> void {
      if (auto it = mark.find(c); it != mark.end()) {
        if (it->second == Mark::Grey) cyclic = true;
        return;
      }
      mark[c] = Mark::Grey;
      index[c] = order.size();
      order.push_back(c);
      if (states_[c].kind == State::Kind::Star) {
        has_star = true;
      } else if (auto op = std::get_if<OpLayer<std::size_t>>(&states_[c].layer)) {
        for (auto& a : op->args) {
          a.body = resolve(a.body);
          self(self, a.body);
        }
      }
      mark[c] = Mark::Black;
    };
    visit(visit, root);
    if (!cyclic) return Parsed{expand(root)};
    if (has_star) throw ParseError("`*` inside a cyclic term", states_[root].pos);
    RationalSystem sys;
    for (std::size_t c : order)
      sys.states.push_back(map_layer(states_[c].layer, [&](std::size_t j) { return index.at(j); }));
    sys.root = 0;
    return Parsed{rational(std::move(sys))};
  }

 private:
  struct State {
    enum class Kind { Layer, Ref, Star };
    Kind kind;
    Layer<std::size_t> layer;
    std::size_t label;
    std::size_t pos;
  };
  struct ScopeEntry {
    std::string name;
    bool label;
    std::size_t label_id;
  };

  std::size_t push_layer(Layer<std::size_t> l, std::size_t pos) {
    states_.push_back({State::Kind::Layer, std::move(l), 0, pos});
    return states_.size() - 1;
  }
  std::size_t push_ref(std::size_t label, std::size_t pos) {
    states_.push_back({State::Kind::Ref, VarLayer{}, label, pos});
    return states_.size() - 1;
  }

  std::size_t resolve(std::size_t c) const {
    std::vector<std::size_t> seen;
    while (states_[c].kind == State::Kind::Ref) {
      std::size_t label = states_[c].label;
      if (std::find(seen.begin(), seen.end(), label) != seen.end())
        throw ParseError("label `" + label_name_[label] + "` is defined only through itself",
                         label_pos_[label]);
      seen.push_back(label);
      c = *label_root_[label];
    }
    return c;
  }

  RawTerm expand(std::size_t c) const {
    c = resolve(c);
    const State& s = states_[c];
    if (s.kind == State::Kind::Star) return RawTerm::star();
    if (auto v = std::get_if<VarLayer>(&s.layer)) return RawTerm::var(v->atom);
    const auto& op = std::get<OpLayer<std::size_t>>(s.layer);
    std::vector<RawTerm::Arg> args;
    for (const auto& a : op.args) args.push_back({a.binders, expand(a.body)});
    return make_op_unchecked(op.name, std::move(args));
  }

  std::vector<State> states_;
  std::vector<std::optional<std::size_t>> label_root_;
  std::vector<std::string> label_name_;
  std::vector<std::size_t> label_pos_;
  std::vector<ScopeEntry> scope_;
};

/// Parsed definition bodies, kept alive while elaborating.
struct DefGroup {
  std::vector<SynPtr> bodies;
  std::vector<std::pair<std::string, const Syn*>> group;
  std::vector<std::size_t> positions;
};

DefGroup parse_defs(const Definitions& defs) {
  DefGroup g;
  for (const auto& [name, source] : defs.entries()) {
    g.bodies.push_back(Parser(lex(source, 0)).parse_all());
    g.group.emplace_back(name, g.bodies.back().get());
    g.positions.push_back(0);
  }
  return g;
}

}  // namespace

Parsed parse(std::string_view src, const Definitions* defs) {
  SynPtr syn = Parser(lex(src, 0)).parse_all();
  DefGroup lib = parse_defs(prelude());
  Elaborator e;
  e.add_group(lib.group, lib.positions);
  DefGroup user;
  if (defs) {
    user = parse_defs(*defs);
    e.add_group(user.group, user.positions);
  }
  return e.finish(e.compile(*syn));
}

RawTerm parse_raw(std::string_view src, const Definitions* defs) {
  Parsed p = parse(src, defs);
  if (!p.is_finite()) throw ParseError("term is cyclic", 0);
  return p.raw();
}

Term parse_term(std::string_view src, const Definitions* defs) {
  Parsed p = parse(src, defs);
  if (!p.is_finite() || !p.raw().has_star()) return p.term();
  throw ParseError("`*` is not a lambda term", src.find('*'));
}

// ---------------------------------------------------------------------------
// Printing

namespace {

enum class Ctx { Top, Fun, Arg };

bool is_lambda_op(const RawTerm& t) {
  if (!t.is_op()) return true;
  const auto& n = t.name();
  std::size_t k = t.args().size();
  if (n == kAbs) return k == 1 && t.args()[0].binders.size() == 1;
  if (n == kApp) return k == 2 && t.args()[0].binders.empty() && t.args()[1].binders.empty();
  return k == 0 && (n == kBot || n == kBotUnknown || constant_name(n));
}

void print_generic_to(const RawTerm& t, std::string& out);

void print_to(const RawTerm& t, Ctx ctx, const PrintOptions& o, std::string& out) {
  if (t.is_star()) {
    out += '*';
    return;
  }
  if (t.is_var()) {
    out += t.atom().name();
    return;
  }
  if (!is_lambda_op(t)) {
    print_generic_to(t, out);
    return;
  }
  const auto& n = t.name();
  if (n == kBot || (n == kBotUnknown && o.assume_bot)) {
    out += o.unicode ? kBotUtf8 : std::string_view("_|_");
    return;
  }
  if (n == kBotUnknown) {
    out += o.unicode ? "\xE2\x8A\xA5?" : "_|_?";
    return;
  }
  if (auto c = constant_name(n)) {
    out += '#';
    out += *c;
    return;
  }
  bool parens = (n == kAbs) ? ctx != Ctx::Top : ctx == Ctx::Arg;
  if (parens) out += '(';
  if (n == kAbs) {
    out += o.unicode ? kLambdaUtf8 : std::string_view("\\");
    const RawTerm* u = &t;
    bool first = true;
    while (u->is_op() && u->name() == kAbs && is_lambda_op(*u)) {
      if (!first) out += ' ';
      out += u->args()[0].binders[0].name();
      first = false;
      u = &u->args()[0].body;
    }
    out += ". ";
    print_to(*u, Ctx::Top, o, out);
  } else {
    print_to(t.args()[0].body, Ctx::Fun, o, out);
    out += ' ';
    print_to(t.args()[1].body, Ctx::Arg, o, out);
  }
  if (parens) out += ')';
}

void print_generic_to(const RawTerm& t, std::string& out) {
  if (t.is_star()) {
    out += '*';
    return;
  }
  if (t.is_var()) {
    out += t.atom().name();
    return;
  }
  out += t.name();
  if (t.args().empty()) return;
  out += '(';
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    if (i) out += ", ";
    const auto& a = t.args()[i];
    if (!a.binders.empty()) {
      out += '<';
      for (std::size_t j = 0; j < a.binders.size(); ++j) {
        if (j) out += ',';
        out += a.binders[j].name();
      }
      out += ">.";
    }
    print_generic_to(a.body, out);
  }
  out += ')';
}

}  // namespace

std::string print(const RawTerm& t, const PrintOptions& options) {
  std::string out;
  print_to(t, Ctx::Top, options, out);
  return out;
}

std::string print(const Term& t, const PrintOptions& options) { return print(to_raw(t), options); }

std::string print_generic(const RawTerm& t) {
  std::string out;
  print_generic_to(t, out);
  return out;
}

// ---------------------------------------------------------------------------
// Generic syntax

namespace {

class GenericParser {
 public:
  GenericParser(std::string_view src, const BindingSignature& sig) : src_(src), sig_(sig) {}

  RawTerm parse_all() {
    RawTerm t = term();
    skip();
    if (i_ != src_.size()) fail("unexpected trailing input");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, i_); }
  void skip() {
    while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < src_.size() && src_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected `") + c + "`");
  }
  std::string ident() {
    skip();
    std::size_t j = i_;
    if (j < src_.size() && (ident_start(src_[j]) || src_[j] == '#')) ++j;
    else fail("expected an identifier");
    while (j < src_.size() && ident_char(src_[j])) ++j;
    std::string out(src_.substr(i_, j - i_));
    i_ = j;
    return out;
  }

  RawTerm term() {
    if (eat('*')) return RawTerm::star();
    std::size_t pos = i_;
    std::string name = ident();
    if (!sig_.arity(name)) return RawTerm::var(Atom::named(name));
    std::vector<RawTerm::Arg> args;
    if (eat('(')) {
      if (!eat(')')) {
        do {
          args.push_back(arg());
        } while (eat(','));
        expect(')');
      }
    }
    try {
      return RawTerm::op(sig_, name, std::move(args));
    } catch (const ArityError& e) {
      throw ParseError(e.what(), pos);
    }
  }

  RawTerm::Arg arg() {
    RawTerm::Arg a{{}, RawTerm::star()};
    if (eat('<')) {
      if (!eat('>')) {
        do {
          a.binders.push_back(Atom::named(ident()));
        } while (eat(','));
        expect('>');
      }
      expect('.');
    }
    a.body = term();
    return a;
  }

  std::string_view src_;
  const BindingSignature& sig_;
  std::size_t i_ = 0;
};

}  // namespace

RawTerm parse_generic(std::string_view src, const BindingSignature& sig) {
  return GenericParser(src, sig).parse_all();
}

}  // namespace infnom::lambda
