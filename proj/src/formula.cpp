// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the ilp authors. All rights reserved.

#include "ilp/formula.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <unordered_map>

namespace ilp {

// ---------------------------------------------------------------------------
// Interner
// ---------------------------------------------------------------------------

namespace {

struct NodeKey {
  Kind kind;
  std::string var;
  Fml lhs;
  Fml rhs;
  bool operator==(const NodeKey& o) const {
    return kind == o.kind && var == o.var && lhs == o.lhs && rhs == o.rhs;
  }
};

struct NodeKeyHash {
  std::size_t operator()(const NodeKey& k) const {
    std::size_t h = static_cast<std::size_t>(k.kind);
    h = h * 1000003u + std::hash<std::string>{}(k.var);
    h = h * 1000003u + std::hash<const void*>{}(k.lhs);
    h = h * 1000003u + std::hash<const void*>{}(k.rhs);
    return h;
  }
};

}  // namespace

struct FormulaInterner {
  std::unordered_map<NodeKey, std::unique_ptr<Formula>, NodeKeyHash> table;

  Fml intern(Kind kind, std::string var, Fml lhs, Fml rhs) {
    NodeKey key{kind, std::move(var), lhs, rhs};
    auto it = table.find(key);
    if (it != table.end()) return it->second.get();
    auto node = std::unique_ptr<Formula>(new Formula());
    node->kind_ = kind;
    node->var_ = key.var;
    node->lhs_ = lhs;
    node->rhs_ = rhs;
    node->id_ = static_cast<std::uint32_t>(table.size());
    node->nodes_ = 1 + (lhs ? lhs->node_count() : 0) + (rhs ? rhs->node_count() : 0);
    Fml out = node.get();
    table.emplace(std::move(key), std::move(node));
    return out;
  }

  static FormulaInterner& instance() {
    static FormulaInterner interner;
    return interner;
  }
};

Fml Formula::mk_var(std::string_view name) {
  ILP_ASSERT(!name.empty(), "variable name must be nonempty");
  return FormulaInterner::instance().intern(Kind::Var, std::string(name), nullptr, nullptr);
}
Fml Formula::mk_bot() {
  return FormulaInterner::instance().intern(Kind::Bot, {}, nullptr, nullptr);
}
Fml Formula::mk_neg(Fml f) {
  return FormulaInterner::instance().intern(Kind::Neg, {}, f, nullptr);
}
Fml Formula::mk_and(Fml a, Fml b) {
  return FormulaInterner::instance().intern(Kind::And, {}, a, b);
}
Fml Formula::mk_or(Fml a, Fml b) {
  return FormulaInterner::instance().intern(Kind::Or, {}, a, b);
}
Fml Formula::mk_imp(Fml a, Fml b) {
  return FormulaInterner::instance().intern(Kind::Imp, {}, a, b);
}
Fml Formula::mk_box(Fml f) {
  return FormulaInterner::instance().intern(Kind::Box, {}, f, nullptr);
}
Fml Formula::mk_rhd(Fml a, Fml b) {
  return FormulaInterner::instance().intern(Kind::Rhd, {}, a, b);
}
Fml Formula::top() { return mk_neg(mk_bot()); }
Fml Formula::mk_diamond(Fml f) { return mk_neg(mk_box(mk_neg(f))); }
Fml Formula::mk_iff(Fml a, Fml b) { return mk_and(mk_imp(a, b), mk_imp(b, a)); }

// ---------------------------------------------------------------------------
// Tokenizer
// ---------------------------------------------------------------------------

namespace {

enum class Tok {
  Ident, True, False, Neg, And, Or, Imp, Iff, Box, Diamond, Rhd,
  LParen, RParen, End
};

struct Token {
  Tok tok;
  std::string text;
  std::size_t pos;
};

class Lexer {
public:
  explicit Lexer(std::string_view s) : s_(s) { advance(); }
  const Token& peek() const { return cur_; }
  Token take() {
    Token t = cur_;
    advance();
    return t;
  }

private:
  void advance() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    std::size_t start = i_;
    if (i_ >= s_.size()) {
      cur_ = {Tok::End, "", start};
      return;
    }
    char c = s_[i_];
    auto two = [&](char a, char b) {
      return i_ + 1 < s_.size() && s_[i_] == a && s_[i_ + 1] == b;
    };
    if (c == '~') { ++i_; cur_ = {Tok::Neg, "~", start}; return; }
    if (c == '&') { ++i_; cur_ = {Tok::And, "&", start}; return; }
    if (c == '(') { ++i_; cur_ = {Tok::LParen, "(", start}; return; }
    if (c == ')') { ++i_; cur_ = {Tok::RParen, ")", start}; return; }
    if (c == '|') {
      if (two('|', '>')) { i_ += 2; cur_ = {Tok::Rhd, "|>", start}; return; }
      ++i_; cur_ = {Tok::Or, "|", start}; return;
    }
    if (c == '-') {
      if (two('-', '>')) { i_ += 2; cur_ = {Tok::Imp, "->", start}; return; }
      throw ParseError("expected '->'", start);
    }
    if (c == '<') {
      if (i_ + 2 < s_.size() && s_[i_ + 1] == '-' && s_[i_ + 2] == '>') {
        i_ += 3; cur_ = {Tok::Iff, "<->", start}; return;
      }
      if (two('<', '>')) { i_ += 2; cur_ = {Tok::Diamond, "<>", start}; return; }
      throw ParseError("expected '<->' or '<>'", start);
    }
    if (c == '[') {
      if (two('[', ']')) { i_ += 2; cur_ = {Tok::Box, "[]", start}; return; }
      throw ParseError("expected '[]'", start);
    }
    if (c >= 'a' && c <= 'z') {
      std::size_t j = i_;
      while (j < s_.size() &&
             ((s_[j] >= 'a' && s_[j] <= 'z') || (s_[j] >= '0' && s_[j] <= '9') ||
              s_[j] == '_'))
        ++j;
      std::string word(s_.substr(i_, j - i_));
      i_ = j;
      if (word == "true") { cur_ = {Tok::True, word, start}; return; }
      if (word == "false") { cur_ = {Tok::False, word, start}; return; }
      cur_ = {Tok::Ident, word, start};
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", start);
  }

  std::string_view s_;
  std::size_t i_ = 0;
  Token cur_{Tok::End, "", 0};
};

// Recursive-descent parser for:
//   iff := imp ('<->' imp)*              (left-assoc, desugared)
//   imp := rhd ('->' imp)?               (right-assoc)
//   rhd := or ('|>' or)?                 (non-associative)
//   or  := and ('|' and)*
//   and := unary ('&' unary)*
//   unary := ('~' | '[]' | '<>') unary | atom
//   atom := ident | 'true' | 'false' | '(' iff ')'
class Parser {
public:
  explicit Parser(std::string_view s) : lex_(s) {}

  Fml run() {
    Fml f = parse_iff();
    const Token& t = lex_.peek();
    if (t.tok != Tok::End) throw ParseError("unexpected trailing input", t.pos);
    return f;
  }

private:
  Fml parse_iff() {
    Fml f = parse_imp();
    while (lex_.peek().tok == Tok::Iff) {
      lex_.take();
      f = Formula::mk_iff(f, parse_imp());
    }
    return f;
  }
  Fml parse_imp() {
    Fml f = parse_rhd();
    if (lex_.peek().tok == Tok::Imp) {
      lex_.take();
      return Formula::mk_imp(f, parse_imp());
    }
    return f;
  }
  Fml parse_rhd() {
    Fml f = parse_or();
    if (lex_.peek().tok == Tok::Rhd) {
      lex_.take();
      Fml g = parse_or();
      const Token& t = lex_.peek();
      if (t.tok == Tok::Rhd)
        throw ParseError("'|>' is non-associative; parenthesize the chain", t.pos);
      return Formula::mk_rhd(f, g);
    }
    return f;
  }
  Fml parse_or() {
    Fml f = parse_and();
    while (lex_.peek().tok == Tok::Or) {
      lex_.take();
      f = Formula::mk_or(f, parse_and());
    }
    return f;
  }
  Fml parse_and() {
    Fml f = parse_unary();
    while (lex_.peek().tok == Tok::And) {
      lex_.take();
      f = Formula::mk_and(f, parse_unary());
    }
    return f;
  }
  Fml parse_unary() {
    const Token& t = lex_.peek();
    switch (t.tok) {
      case Tok::Neg:
        lex_.take();
        return Formula::mk_neg(parse_unary());
      case Tok::Box:
        lex_.take();
        return Formula::mk_box(parse_unary());
      case Tok::Diamond:
        lex_.take();
        return Formula::mk_diamond(parse_unary());
      default:
        return parse_atom();
    }
  }
  Fml parse_atom() {
    Token t = lex_.take();
    switch (t.tok) {
      case Tok::Ident:
        return Formula::mk_var(t.text);
      case Tok::True:
        return Formula::top();
      case Tok::False:
        return Formula::mk_bot();
      case Tok::LParen: {
        Fml f = parse_iff();
        Token close = lex_.take();
        if (close.tok != Tok::RParen) throw ParseError("expected ')'", close.pos);
        return f;
      }
      default:
        throw ParseError("expected a formula", t.pos);
    }
  }

  Lexer lex_;
};

}  // namespace

Fml parse(std::string_view text) { return Parser(text).run(); }

// ---------------------------------------------------------------------------
// Printer
// ---------------------------------------------------------------------------

namespace {

// Binding strength: -> 1, |> 2, | 3, & 4, unary 5, atoms 6.
int prec(Fml f) {
  switch (f->kind()) {
    case Kind::Imp: return 1;
    case Kind::Rhd: return 2;
    case Kind::Or: return 3;
    case Kind::And: return 4;
    case Kind::Neg:
    case Kind::Box: return 5;
    case Kind::Var:
    case Kind::Bot: return 6;
  }
  return 6;
}

bool is_top(Fml f) {
  return f->kind() == Kind::Neg && f->lhs()->kind() == Kind::Bot;
}

void emit(Fml f, std::string& out);

void emit_child(Fml f, int min_prec, std::string& out) {
  if (prec(f) < min_prec && !is_top(f)) {
    out += '(';
    emit(f, out);
    out += ')';
  } else {
    emit(f, out);
  }
}

void emit(Fml f, std::string& out) {
  if (is_top(f)) {
    out += "true";
    return;
  }
  switch (f->kind()) {
    case Kind::Var:
      out += f->var();
      return;
    case Kind::Bot:
      out += "false";
      return;
    case Kind::Neg:
      out += '~';
      emit_child(f->lhs(), 5, out);
      return;
    case Kind::Box:
      out += "[]";
      emit_child(f->lhs(), 5, out);
      return;
    case Kind::And:
      emit_child(f->lhs(), 4, out);
      out += " & ";
      emit_child(f->rhs(), 5, out);
      return;
    case Kind::Or:
      emit_child(f->lhs(), 3, out);
      out += " | ";
      emit_child(f->rhs(), 4, out);
      return;
    case Kind::Rhd:
      emit_child(f->lhs(), 3, out);
      out += " |> ";
      emit_child(f->rhs(), 3, out);
      return;
    case Kind::Imp:
      emit_child(f->lhs(), 2, out);
      out += " -> ";
      emit_child(f->rhs(), 1, out);
      return;
  }
}

}  // namespace

std::string print(Fml f) {
  std::string out;
  emit(f, out);
  return out;
}

// ---------------------------------------------------------------------------
// Structural analyses
// ---------------------------------------------------------------------------

std::vector<Fml> subformulas(Fml f) {
  std::set<Fml, bool (*)(Fml, Fml)> seen(fml_less);
  std::vector<Fml> stack{f};
  while (!stack.empty()) {
    Fml g = stack.back();
    stack.pop_back();
    if (!seen.insert(g).second) continue;
    if (g->lhs()) stack.push_back(g->lhs());
    if (g->rhs()) stack.push_back(g->rhs());
  }
  return {seen.begin(), seen.end()};
}

Fml tilde(Fml f) {
  if (f->kind() == Kind::Neg) return f->lhs();
  return Formula::mk_neg(f);
}

std::vector<std::string> vars(Fml f) {
  std::set<std::string> out;
  for (Fml g : subformulas(f))
    if (g->kind() == Kind::Var) out.insert(g->var());
  return {out.begin(), out.end()};
}

namespace {

// True iff some occurrence of p in f lies outside every [] and |>.
bool has_bare_occurrence(Fml f, std::string_view p) {
  switch (f->kind()) {
    case Kind::Var: return f->var() == p;
    case Kind::Bot: return false;
    case Kind::Neg: return has_bare_occurrence(f->lhs(), p);
    case Kind::And:
    case Kind::Or:
    case Kind::Imp:
      return has_bare_occurrence(f->lhs(), p) || has_bare_occurrence(f->rhs(), p);
    case Kind::Box:
    case Kind::Rhd:
      return false;
  }
  return false;
}

bool occurs(Fml f, std::string_view p) {
  switch (f->kind()) {
    case Kind::Var: return f->var() == p;
    case Kind::Bot: return false;
    case Kind::Neg:
    case Kind::Box: return occurs(f->lhs(), p);
    default: return occurs(f->lhs(), p) || occurs(f->rhs(), p);
  }
}

}  // namespace

bool is_modalized(Fml f, std::string_view p) { return !has_bare_occurrence(f, p); }

bool is_left_modalized(Fml f, std::string_view p) {
  if (!is_modalized(f, p)) return false;
  for (Fml g : subformulas(f))
    if (g->kind() == Kind::Rhd && occurs(g->rhs(), p)) return false;
  return true;
}

std::uint32_t degree(Fml f) {
  switch (f->kind()) {
    case Kind::Var:
    case Kind::Bot: return 0;
    case Kind::Neg:
    case Kind::Box: return degree(f->lhs());
    case Kind::And:
    case Kind::Or:
    case Kind::Imp: return std::max(degree(f->lhs()), degree(f->rhs()));
    case Kind::Rhd: return std::max(degree(f->lhs()), degree(f->rhs()) + 1);
  }
  return 0;
}

Fml expand_box(Fml f) {
  switch (f->kind()) {
    case Kind::Var:
    case Kind::Bot: return f;
    case Kind::Neg: return Formula::mk_neg(expand_box(f->lhs()));
    case Kind::And: return Formula::mk_and(expand_box(f->lhs()), expand_box(f->rhs()));
    case Kind::Or: return Formula::mk_or(expand_box(f->lhs()), expand_box(f->rhs()));
    case Kind::Imp: return Formula::mk_imp(expand_box(f->lhs()), expand_box(f->rhs()));
    case Kind::Rhd: return Formula::mk_rhd(expand_box(f->lhs()), expand_box(f->rhs()));
    case Kind::Box:
      return Formula::mk_rhd(Formula::mk_neg(expand_box(f->lhs())), Formula::mk_bot());
  }
  return f;
}

Fml subst(Fml f, std::string_view p, Fml g) {
  switch (f->kind()) {
    case Kind::Var: return f->var() == p ? g : f;
    case Kind::Bot: return f;
    case Kind::Neg: return Formula::mk_neg(subst(f->lhs(), p, g));
    case Kind::Box: return Formula::mk_box(subst(f->lhs(), p, g));
    case Kind::And: return Formula::mk_and(subst(f->lhs(), p, g), subst(f->rhs(), p, g));
    case Kind::Or: return Formula::mk_or(subst(f->lhs(), p, g), subst(f->rhs(), p, g));
    case Kind::Imp: return Formula::mk_imp(subst(f->lhs(), p, g), subst(f->rhs(), p, g));
    case Kind::Rhd: return Formula::mk_rhd(subst(f->lhs(), p, g), subst(f->rhs(), p, g));
  }
  return f;
}

bool has_box(Fml f) {
  if (f->kind() == Kind::Box) return true;
  if (f->lhs() && has_box(f->lhs())) return true;
  if (f->rhs() && has_box(f->rhs())) return true;
  return false;
}

bool is_box_shape(Fml f, Fml* body) {
  if (f->kind() != Kind::Rhd) return false;
  if (f->rhs()->kind() != Kind::Bot) return false;
  if (f->lhs()->kind() != Kind::Neg) return false;
  if (body) *body = f->lhs()->lhs();
  return true;
}

// ---------------------------------------------------------------------------
// Bimodal formulas
// ---------------------------------------------------------------------------

namespace {

struct BiKey {
  BiKind kind;
  int modality;
  std::string var;
  BiFml lhs;
  BiFml rhs;
  bool operator==(const BiKey& o) const {
    return kind == o.kind && modality == o.modality && var == o.var &&
           lhs == o.lhs && rhs == o.rhs;
  }
};

struct BiKeyHash {
  std::size_t operator()(const BiKey& k) const {
    std::size_t h = static_cast<std::size_t>(k.kind) * 31 + k.modality;
    h = h * 1000003u + std::hash<std::string>{}(k.var);
    h = h * 1000003u + std::hash<const void*>{}(k.lhs);
    h = h * 1000003u + std::hash<const void*>{}(k.rhs);
    return h;
  }
};

}  // namespace

struct BiFormulaInterner {
  std::unordered_map<BiKey, std::unique_ptr<BiFormula>, BiKeyHash> table;

  BiFml intern(BiKind kind, int modality, std::string var, BiFml lhs, BiFml rhs) {
    BiKey key{kind, modality, std::move(var), lhs, rhs};
    auto it = table.find(key);
    if (it != table.end()) return it->second.get();
    auto node = std::unique_ptr<BiFormula>(new BiFormula());
    node->kind_ = kind;
    node->modality_ = modality;
    node->var_ = key.var;
    node->lhs_ = lhs;
    node->rhs_ = rhs;
    node->id_ = static_cast<std::uint32_t>(table.size());
    BiFml out = node.get();
    table.emplace(std::move(key), std::move(node));
    return out;
  }

  static BiFormulaInterner& instance() {
    static BiFormulaInterner interner;
    return interner;
  }
};

BiFml BiFormula::mk_var(std::string_view name) {
  return BiFormulaInterner::instance().intern(BiKind::Var, 0, std::string(name), nullptr, nullptr);
}
BiFml BiFormula::mk_bot() {
  return BiFormulaInterner::instance().intern(BiKind::Bot, 0, {}, nullptr, nullptr);
}
BiFml BiFormula::mk_neg(BiFml f) {
  return BiFormulaInterner::instance().intern(BiKind::Neg, 0, {}, f, nullptr);
}
BiFml BiFormula::mk_and(BiFml a, BiFml b) {
  return BiFormulaInterner::instance().intern(BiKind::And, 0, {}, a, b);
}
BiFml BiFormula::mk_or(BiFml a, BiFml b) {
  return BiFormulaInterner::instance().intern(BiKind::Or, 0, {}, a, b);
}
BiFml BiFormula::mk_imp(BiFml a, BiFml b) {
  return BiFormulaInterner::instance().intern(BiKind::Imp, 0, {}, a, b);
}
BiFml BiFormula::mk_boxk(int modality, BiFml f) {
  ILP_ASSERT(modality == 0 || modality == 1, "modality must be 0 or 1");
  return BiFormulaInterner::instance().intern(BiKind::BoxK, modality, {}, f, nullptr);
}
BiFml BiFormula::mk_diamond1(BiFml f) { return mk_neg(mk_boxk(1, mk_neg(f))); }

namespace {

int bi_prec(BiFml f) {
  switch (f->kind()) {
    case BiKind::Imp: return 1;
    case BiKind::Or: return 3;
    case BiKind::And: return 4;
    case BiKind::Neg:
    case BiKind::BoxK: return 5;
    default: return 6;
  }
}

void bi_emit(BiFml f, std::string& out);

void bi_emit_child(BiFml f, int min_prec, std::string& out) {
  if (bi_prec(f) < min_prec) {
    out += '(';
    bi_emit(f, out);
    out += ')';
  } else {
    bi_emit(f, out);
  }
}

void bi_emit(BiFml f, std::string& out) {
  switch (f->kind()) {
    case BiKind::Var: out += f->var(); return;
    case BiKind::Bot: out += "false"; return;
    case BiKind::Neg:
      out += '~';
      bi_emit_child(f->lhs(), 5, out);
      return;
    case BiKind::BoxK:
      out += f->modality() == 0 ? "[0]" : "[1]";
      bi_emit_child(f->lhs(), 5, out);
      return;
    case BiKind::And:
      bi_emit_child(f->lhs(), 4, out);
      out += " & ";
      bi_emit_child(f->rhs(), 5, out);
      return;
    case BiKind::Or:
      bi_emit_child(f->lhs(), 3, out);
      out += " | ";
      bi_emit_child(f->rhs(), 4, out);
      return;
    case BiKind::Imp:
      bi_emit_child(f->lhs(), 2, out);
      out += " -> ";
      bi_emit_child(f->rhs(), 1, out);
      return;
  }
}

}  // namespace

std::string print(BiFml f) {
  std::string out;
  bi_emit(f, out);
  return out;
}

std::vector<std::string> vars(BiFml f) {
  std::set<std::string> out;
  std::vector<BiFml> stack{f};
  while (!stack.empty()) {
    BiFml g = stack.back();
    stack.pop_back();
    if (g->kind() == BiKind::Var) out.insert(g->var());
    if (g->lhs()) stack.push_back(g->lhs());
    if (g->rhs()) stack.push_back(g->rhs());
  }
  return {out.begin(), out.end()};
}

}  // namespace ilp
