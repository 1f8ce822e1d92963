#include "phasealg/spec_parser.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>

#include "phasealg/error.hpp"

namespace phasealg {

AlgebraSpec SpecDocument::spec() const {
  AlgebraSpec s;
  s.dim = dimension;
  s.params = params;
  s.tensors = tensors;
  s.comm_xp = comm_xp;
  s.comm_xx = comm_xx;
  s.comm_pp = comm_pp;
  return s;
}

namespace {

enum class Tok { Ident, Number, Symbol, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 0;
  int column = 0;
};

std::vector<Token> tokenize(std::string_view text, int line, int column0) {
  std::vector<Token> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const char c = text[pos];
    const int column = column0 + static_cast<int>(pos);
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++pos;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos;
      while (end < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[end])) || text[end] == '_')) {
        ++end;
      }
      out.push_back({Tok::Ident, std::string(text.substr(pos, end - pos)), line, column});
      pos = end;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t end = pos;
      while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
      out.push_back({Tok::Number, std::string(text.substr(pos, end - pos)), line, column});
      pos = end;
    } else if (std::string_view("()+-*/^,:").find(c) != std::string_view::npos) {
      out.push_back({Tok::Symbol, std::string(1, c), line, column});
      ++pos;
    } else {
      throw ParseError(diag::kSyntax, line, column, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::End, "", line, column0 + static_cast<int>(text.size())});
  return out;
}

const std::set<std::string> kReserved{"i", "X", "P", "delta", "eps", "rot", "dimension",
                                      "param", "tensor", "comm"};

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])))) return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

/// Recursive-descent expression parser over one line's tokens.
class ExprParser {
 public:
  ExprParser(std::vector<Token> tokens, const SpecDocument* doc)
      : tokens_(std::move(tokens)), doc_(doc) {}

  TensorExpr parse_all() {
    TensorExpr e = expr();
    if (peek().kind != Tok::End) fail(diag::kSyntax, peek(), "unexpected '" + peek().text + "'");
    return e;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& take() { return tokens_[pos_++]; }
  bool accept(const char* sym) {
    if (peek().kind == Tok::Symbol && peek().text == sym) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(const char* sym) {
    if (!accept(sym)) {
      fail(diag::kSyntax, peek(),
           std::string("expected '") + sym + "'" +
               (peek().kind == Tok::End ? " before end of line" : ", found '" + peek().text + "'"));
    }
  }
  [[noreturn]] static void fail(const char* code, const Token& at, const std::string& msg) {
    throw ParseError(code, at.line, at.column, msg);
  }

  TensorExpr expr() {
    TensorExpr e;
    if (accept("-")) {
      e = -term();
    } else {
      accept("+");
      e = term();
    }
    while (true) {
      if (accept("+")) {
        e += term();
      } else if (accept("-")) {
        e -= term();
      } else {
        return e;
      }
    }
  }

  TensorExpr term() {
    TensorExpr e = unary();
    while (peek().kind == Tok::Symbol && peek().text == "*") {
      const Token star = take();
      TensorExpr rhs = unary();
      try {
        e = e * rhs;
      } catch (const StructuralError&) {
        fail(diag::kNonlinear, star, "product of two basis atoms is not affine");
      }
    }
    return e;
  }

  TensorExpr unary() {
    if (accept("-")) return -unary();
    return power();
  }

  TensorExpr power() {
    const Token start = peek();
    TensorExpr base = primary();
    if (!accept("^")) return base;
    const Token exp = take();
    if (exp.kind != Tok::Number) fail(diag::kSyntax, exp, "exponent must be a nonnegative integer");
    for (const auto& t : base.terms()) {
      if (t.atom.kind != AtomKind::Id) fail(diag::kNonlinear, start, "power of a basis atom");
      if (!t.factors.empty()) fail(diag::kIndex, start, "power of an indexed expression");
    }
    const int n = std::stoi(exp.text);
    TensorExpr out = TensorExpr::scalar(ScalarPoly(1));
    for (int k = 0; k < n; ++k) out = out * base;
    return out;
  }

  Index index() {
    const Token t = take();
    if (t.kind == Tok::Number) {
      const int v = std::stoi(t.text);
      if (v < 1 || v > 3) fail(diag::kIndex, t, "index value " + t.text + " outside 1..3");
      return Index(v);
    }
    if (t.kind != Tok::Ident) fail(diag::kSyntax, t, "expected an index");
    return Index(t.text);
  }

  std::vector<Index> indices(const Token& head, std::size_t expected) {
    expect("(");
    std::vector<Index> out{index()};
    while (accept(",")) out.push_back(index());
    expect(")");
    if (out.size() != expected) {
      fail(diag::kIndex, head,
           "'" + head.text + "' takes " + std::to_string(expected) + " indices, got " +
               std::to_string(out.size()));
    }
    return out;
  }

  TensorExpr primary() {
    const Token t = take();
    if (t.kind == Tok::Number) {
      Rational q(t.text);
      if (accept("/")) {
        const Token d = take();
        if (d.kind != Tok::Number) fail(diag::kSyntax, d, "expected a denominator");
        if (std::stoi(d.text) == 0) fail(diag::kSyntax, d, "zero denominator");
        q /= Rational(d.text);
      }
      q.canonicalize();
      return TensorExpr::scalar(ScalarPoly(GaussianRational(q)));
    }
    if (t.kind == Tok::Symbol && t.text == "(") {
      TensorExpr e = expr();
      expect(")");
      return e;
    }
    if (t.kind != Tok::Ident) {
      fail(diag::kSyntax, t, t.kind == Tok::End ? "unexpected end of expression" : "unexpected '" + t.text + "'");
    }
    const bool call = peek().kind == Tok::Symbol && peek().text == "(";
    if (!call) {
      if (t.text == "i") return TensorExpr::scalar(ScalarPoly(GaussianRational::imaginary_unit()));
      if (!doc_ || std::find(doc_->params.begin(), doc_->params.end(), t.text) != doc_->params.end()) {
        if (!doc_ && kReserved.count(t.text)) fail(diag::kSyntax, t, "reserved name '" + t.text + "'");
        return TensorExpr::scalar(ScalarPoly::variable(t.text));
      }
      fail(diag::kUndeclared, t, "undeclared parameter '" + t.text + "'");
    }
    if (!doc_) fail(diag::kSyntax, t, "indexed symbol '" + t.text + "' in a scalar expression");
    if (t.text == "delta") {
      auto idx = indices(t, 2);
      return TensorExpr::of(Factor::delta(idx[0], idx[1]));
    }
    if (t.text == "eps") {
      auto idx = indices(t, 3);
      return TensorExpr::of(Factor::eps(idx[0], idx[1], idx[2]));
    }
    if (t.text == "X" || t.text == "P") {
      auto idx = indices(t, 1);
      return TensorExpr::of(t.text == "X" ? Atom::x(idx[0]) : Atom::p(idx[0]));
    }
    for (const auto& decl : doc_->tensors) {
      if (decl.name == t.text) {
        auto idx = indices(t, static_cast<std::size_t>(decl.rank));
        return TensorExpr::of(Factor::named(decl.name, decl.symmetry, std::move(idx)));
      }
    }
    fail(diag::kUndeclared, t, "undeclared tensor '" + t.text + "'");
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  const SpecDocument* doc_;
};

struct Line {
  int number;
  std::string text;  // comment stripped
};

struct CommLine {
  int line;
  int body_column;
  std::string body;
};

std::string strip_comment(const std::string& s) {
  auto hash = s.find('#');
  return hash == std::string::npos ? s : s.substr(0, hash);
}

Symmetry parse_symmetry(const Token& t) {
  if (t.text == "antisym2") return Symmetry::Antisym2;
  if (t.text == "antisym12") return Symmetry::Antisym12;
  if (t.text == "none") return Symmetry::None;
  throw ParseError(diag::kSyntax, t.line, t.column,
                   "unknown symmetry '" + t.text + "' (antisym2, antisym12 or none)");
}

void check_table(const TensorExpr& e, const CommLine& where, bool antisymmetric) {
  try {
    validate_indices(e);
  } catch (const StructuralError& err) {
    throw ParseError(diag::kIndex, where.line, where.body_column, err.what());
  }
  const auto free = free_labels(e);
  for (const auto& l : free) {
    if (l != "i" && l != "j") {
      throw ParseError(diag::kIndex, where.line, where.body_column,
                       "label '" + l + "' is neither free (i, j) nor repeated");
    }
  }
  for (const auto& t : e.terms()) {
    if (free_labels(t) != free) {
      throw ParseError(diag::kIndex, where.line, where.body_column,
                       "term " + render(t) + " does not carry the free labels of the expression");
    }
  }
  if (antisymmetric) {
    const TensorExpr swapped = relabel(e, {{"i", Index("j")}, {"j", Index("i")}});
    if (!expr_equiv(swapped, -e)) {
      throw ParseError(diag::kAntisym, where.line, where.body_column,
                       "expression is not antisymmetric under i <-> j");
    }
  }
}

}  // namespace

TensorExpr parse_expression(std::string_view text, const SpecDocument& doc, int line) {
  ExprParser p(tokenize(text, line, 1), &doc);
  return p.parse_all();
}

ScalarPoly parse_polynomial(std::string_view text) {
  ExprParser p(tokenize(text, 1, 1), nullptr);
  const TensorExpr e = p.parse_all();
  ScalarPoly out;
  for (const auto& t : e.terms()) out += t.coeff;
  return out;
}

SpecDocument parse_spec(std::string_view text) {
  SpecDocument doc;
  std::optional<CommLine> comm[3];  // XP, XX, PP
  bool have_dimension = false;
  std::set<std::string> names;

  int number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string raw = strip_comment(std::string(text.substr(start, end - start)));
    ++number;
    start = end + 1;

    // The body of `comm` lines is parsed in a second pass once every declaration is known.
    const auto colon = raw.find(':');
    const auto head = tokenize(colon == std::string::npos ? raw : raw.substr(0, colon), number, 1);
    if (head.front().kind == Tok::End) {
      if (colon != std::string::npos) {
        throw ParseError(diag::kSyntax, number, static_cast<int>(colon) + 1, "missing directive");
      }
      continue;
    }
    const Token& kw = head.front();
    auto bad = [&](const Token& t, const std::string& msg) -> ParseError {
      return ParseError(diag::kSyntax, t.line, t.column, msg);
    };

    if (kw.text == "comm") {
      if (colon == std::string::npos) throw bad(head.back(), "expected ':' after the commutator pair");
      if (head.size() != 4 || head[1].kind != Tok::Ident || head[2].kind != Tok::Ident) {
        throw bad(kw, "expected 'comm X X', 'comm X P' or 'comm P P'");
      }
      const std::string pair = head[1].text + " " + head[2].text;
      int slot = -1;
      if (pair == "X P") slot = 0;
      if (pair == "X X") slot = 1;
      if (pair == "P P") slot = 2;
      if (slot < 0) throw bad(head[1], "unknown commutator pair '" + pair + "'");
      if (comm[slot]) {
        throw ParseError(diag::kDuplicate, number, kw.column,
                         "commutator " + pair + " already declared on line " +
                             std::to_string(comm[slot]->line));
      }
      comm[slot] = CommLine{number, static_cast<int>(colon) + 2, raw.substr(colon + 1)};
      continue;
    }
    if (colon != std::string::npos) throw bad(kw, "unexpected ':'");

    if (kw.text == "dimension") {
      if (head.size() != 3 || head[1].kind != Tok::Number) throw bad(kw, "expected 'dimension <n>'");
      if (have_dimension) throw ParseError(diag::kDuplicate, number, kw.column, "dimension declared twice");
      if (head[1].text != "3") {
        throw ParseError(diag::kDimension, head[1].line, head[1].column,
                         "only dimension 3 is supported, got " + head[1].text);
      }
      have_dimension = true;
    } else if (kw.text == "param") {
      if (head.size() < 3) throw bad(kw, "expected at least one parameter name");
      for (std::size_t n = 1; n + 1 < head.size(); ++n) {
        const Token& t = head[n];
        if (t.kind != Tok::Ident || !is_identifier(t.text)) throw bad(t, "expected a parameter name");
        if (kReserved.count(t.text)) throw bad(t, "reserved name '" + t.text + "'");
        if (!names.insert(t.text).second) {
          throw ParseError(diag::kDuplicate, t.line, t.column, "'" + t.text + "' declared twice");
        }
        doc.params.push_back(t.text);
      }
    } else if (kw.text == "tensor") {
      if (head.size() < 4 || head[1].kind != Tok::Ident) {
        throw bad(kw, "expected 'tensor <name> antisym2|antisym12|none <rank>'");
      }
      const Token& name = head[1];
      if (!is_identifier(name.text) || kReserved.count(name.text)) {
        throw bad(name, "invalid tensor name '" + name.text + "'");
      }
      TensorDecl decl{name.text, parse_symmetry(head[2]), 2};
      if (decl.symmetry == Symmetry::Antisym12) decl.rank = 3;
      const bool has_rank = head.size() == 5;
      if (head.size() > 5 || (has_rank && head[3].kind != Tok::Number)) {
        throw bad(head[3], "expected an optional rank after the symmetry");
      }
      if (has_rank) {
        const int rank = std::stoi(head[3].text);
        if (decl.symmetry != Symmetry::None && rank != decl.rank) {
          throw ParseError(diag::kIndex, head[3].line, head[3].column,
                           "rank " + head[3].text + " contradicts " + head[2].text);
        }
        if (rank < 1 || rank > 4) {
          throw ParseError(diag::kIndex, head[3].line, head[3].column, "unsupported rank " + head[3].text);
        }
        decl.rank = rank;
      } else if (decl.symmetry == Symmetry::None) {
        throw bad(head[2], "symmetry 'none' needs an explicit rank");
      }
      if (!names.insert(decl.name).second) {
        throw ParseError(diag::kDuplicate, name.line, name.column, "'" + name.text + "' declared twice");
      }
      doc.tensors.push_back(std::move(decl));
    } else {
      throw bad(kw, "unknown directive '" + kw.text + "'");
    }
  }

  static const char* pairs[] = {"X P", "X X", "P P"};
  TensorExpr* bodies[] = {&doc.comm_xp, &doc.comm_xx, &doc.comm_pp};
  for (int slot = 0; slot < 3; ++slot) {
    if (!comm[slot]) {
      throw ParseError(diag::kMissing, number, 1, std::string("missing 'comm ") + pairs[slot] + "'");
    }
    ExprParser p(tokenize(comm[slot]->body, comm[slot]->line, comm[slot]->body_column), &doc);
    const TensorExpr e = p.parse_all();
    check_table(e, *comm[slot], slot != 0);
    *bodies[slot] = simplify(e);
  }
  try {
    validate_spec(doc.spec());
  } catch (const StructuralError& err) {
    throw ParseError(diag::kIndex, comm[0]->line, 1, err.what());
  }
  return doc;
}

std::string render(const SpecDocument& doc) {
  std::string out = "dimension " + std::to_string(doc.dimension) + "\n";
  if (!doc.params.empty()) {
    out += "param";
    for (const auto& p : doc.params) out += " " + p;
    out += "\n";
  }
  for (const auto& t : doc.tensors) {
    out += "tensor " + t.name + " ";
    switch (t.symmetry) {
      case Symmetry::Antisym2:
        out += "antisym2";
        break;
      case Symmetry::Antisym12:
        out += "antisym12";
        break;
      case Symmetry::None:
        out += "none " + std::to_string(t.rank);
        break;
    }
    out += "\n";
  }
  out += "comm X P : " + render(doc.comm_xp) + "\n";
  out += "comm X X : " + render(doc.comm_xx) + "\n";
  out += "comm P P : " + render(doc.comm_pp) + "\n";
  return out;
}

}  // namespace phasealg
