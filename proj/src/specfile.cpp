#include "rieszkit/specfile.hpp"

#include <cctype>
#include <sstream>

namespace rieszkit {

namespace {

std::string describe_error(int line, int column, const std::string& message, const std::set<std::string>& expected) {
  std::ostringstream out;
  out << "line " << line << ", column " << column << ": " << message;
  if (!expected.empty()) {
    out << " (expected ";
    bool first = true;
    for (const auto& e : expected) {
      out << (first ? "" : " or ") << e;
      first = false;
    }
    out << ")";
  }
  return out.str();
}

struct Token {
  enum class Kind { Ident, Number, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  int line = 1, column = 1;
};

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    unsigned char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(c)) {
      advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.column = col;
    std::size_t start = i;
    if (std::isalpha(c) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      t.kind = Token::Kind::Ident;
      t.text = src.substr(start, j - start);
      advance(j - i);
    } else if (std::isdigit(c)) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j + 1 < src.size() && src[j] == '.' && std::isdigit(static_cast<unsigned char>(src[j + 1]))) {
        ++j;
        while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      }
      t.kind = Token::Kind::Number;
      t.text = src.substr(start, j - start);
      advance(j - i);
    } else if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      t.kind = Token::Kind::Punct;
      t.text = "->";
      advance(2);
    } else if (std::string_view("(){}[],:;@|+-*/=>^<").find(static_cast<char>(c)) != std::string_view::npos) {
      t.kind = Token::Kind::Punct;
      t.text = std::string(1, static_cast<char>(c));
      advance(1);
    } else {
      throw ParseError(line, col, std::string("unexpected character '") + static_cast<char>(c) + "'");
    }
    out.push_back(t);
  }
  Token end;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

const std::set<std::string> kSpaceKinds = {"R^n", "l0inf", "c", "CK", "E_K", "grid"};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  SpecFile file() {
    SpecFile spec;
    while (!at_end()) {
      const Token& t = peek();
      if (is_word("space")) {
        spec.spaces.push_back(space_decl(spec));
      } else if (is_word("operator")) {
        spec.operators.push_back(operator_decl(spec));
      } else if (is_word("check") || is_word("positive_part") || is_word("project_oc") ||
                 is_word("witness_pervasive") || is_word("classify")) {
        spec.directives.push_back(directive(spec));
      } else {
        fail(t, "unexpected '" + t.text + "'",
             {"'space'", "'operator'", "'check'", "'positive_part'", "'project_oc'", "'witness_pervasive'", "'classify'"});
      }
    }
    return spec;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;

  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  bool at_end() const { return peek().kind == Token::Kind::End; }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool is_word(const std::string& w, std::size_t ahead = 0) const {
    return peek(ahead).kind == Token::Kind::Ident && peek(ahead).text == w;
  }
  bool is_punct(const std::string& p, std::size_t ahead = 0) const {
    return peek(ahead).kind == Token::Kind::Punct && peek(ahead).text == p;
  }

  [[noreturn]] void fail(const Token& t, const std::string& message, std::set<std::string> expected = {}) const {
    std::string m = t.kind == Token::Kind::End ? "unexpected end of input" : message;
    throw ParseError(t.line, t.column, m, std::move(expected));
  }

  void expect_punct(const std::string& p) {
    if (!is_punct(p)) fail(peek(), "unexpected '" + peek().text + "'", {"'" + p + "'"});
    next();
  }
  void expect_word(const std::string& w) {
    if (!is_word(w)) fail(peek(), "unexpected '" + peek().text + "'", {"'" + w + "'"});
    next();
  }
  std::string ident(const std::string& what = "identifier") {
    if (peek().kind != Token::Kind::Ident) fail(peek(), "unexpected '" + peek().text + "'", {what});
    return next().text;
  }
  std::int64_t integer(bool allow_sign = false) {
    bool negative = false;
    if (allow_sign && (is_punct("-") || is_punct("+"))) negative = next().text == "-";
    const Token& t = peek();
    if (t.kind != Token::Kind::Number || t.text.find('.') != std::string::npos)
      fail(t, "unexpected '" + t.text + "'", {"integer"});
    next();
    std::int64_t v = 0;
    try {
      v = std::stoll(t.text);
    } catch (const std::exception&) {
      fail(t, "integer out of range");
    }
    return negative ? -v : v;
  }
  // unsigned rational: NUMBER ['/' NUMBER]
  Scalar magnitude() {
    const Token& t = peek();
    if (t.kind != Token::Kind::Number) fail(t, "unexpected '" + t.text + "'", {"number"});
    next();
    std::string text = t.text;
    if (is_punct("/")) {
      next();
      const Token& d = peek();
      if (d.kind != Token::Kind::Number || d.text.find('.') != std::string::npos)
        fail(d, "unexpected '" + d.text + "'", {"integer denominator"});
      next();
      if (d.text.find_first_not_of('0') == std::string::npos) fail(d, "zero denominator");
      text += "/" + d.text;
    }
    return parse_scalar(text);
  }
  Scalar signed_scalar() {
    bool negative = false;
    if (is_punct("-") || is_punct("+")) negative = next().text == "-";
    Scalar v = magnitude();
    return negative ? Scalar(-v) : v;
  }

  SpaceDesc space_kind() {
    const Token& t = peek();
    if (t.kind != Token::Kind::Ident) fail(t, "unexpected '" + t.text + "'", kSpaceKinds);
    if (t.text == "R" && is_punct("^", 1)) {
      next();
      next();
      const Token& d = peek();
      std::int64_t n = integer();
      if (n < 1 || n > 64) fail(d, "dimension must be between 1 and 64");
      return SpaceDesc::fin_dim(static_cast<int>(n));
    }
    try {
      SpaceDesc s = parse_space_kind(t.text);
      next();
      return s;
    } catch (const Error&) {
      fail(t, "unknown space kind '" + t.text + "'", kSpaceKinds);
    }
  }

  SpaceDecl space_decl(const SpecFile& spec) {
    expect_word("space");
    const Token& name_tok = peek();
    SpaceDecl d;
    d.name = ident("space name");
    for (const auto& s : spec.spaces)
      if (s.name == d.name) fail(name_tok, "space '" + d.name + "' declared twice");
    expect_punct("=");
    d.space = space_kind();
    return d;
  }

  std::string space_ref(const SpecFile& spec) {
    const Token& t = peek();
    if (t.kind == Token::Kind::Ident && t.text == "R" && is_punct("^", 1)) {
      SpaceDesc s = space_kind();
      return space_keyword(s);
    }
    std::string name = ident("space name");
    for (const auto& s : spec.spaces)
      if (s.name == name) return name;
    try {
      parse_space_kind(name);
      return name;
    } catch (const Error&) {
      fail(t, "undeclared space '" + name + "'");
    }
  }

  // --- element literals --------------------------------------------------

  BasisRef basis() {
    const Token& t = peek();
    BasisRef b;
    if (is_word("one")) {
      next();
      b.kind = BasisRef::Kind::Unit;
      return b;
    }
    if (is_word("e") || is_word("g") || is_word("ru")) {
      std::string w = next().text;
      expect_punct("(");
      std::int64_t first = integer();
      if (w == "ru") {
        b.kind = BasisRef::Kind::RowUnit;
        b.a = first;
      } else {
        b.kind = w == "e" ? BasisRef::Kind::Atom : BasisRef::Kind::Token;
        if (is_punct(",")) {
          next();
          b.two_index = true;
          b.a = first;
          b.b = integer();
        } else {
          b.b = first;
        }
      }
      expect_punct(")");
      return b;
    }
    fail(t, "unexpected '" + t.text + "'", {"'e(..)'", "'g(..)'", "'ru(..)'", "'one'"});
  }

  ElemExpr element() {
    ElemExpr e;
    bool basis_next = is_word("e", 1) || is_word("g", 1) || is_word("ru", 1) || is_word("one", 1);
    if (peek().kind == Token::Kind::Number && peek().text == "0" && !is_punct("/", 1) && !is_punct("*", 1) &&
        !basis_next) {
      next();
      return e;
    }
    bool first = true;
    while (true) {
      bool negative = false;
      if (is_punct("+") || is_punct("-")) {
        negative = next().text == "-";
      } else if (!first) {
        break;
      }
      Scalar c = 1;
      if (peek().kind == Token::Kind::Number) {
        c = magnitude();
        if (is_punct("*")) next();
      }
      e.terms.emplace_back(negative ? Scalar(-c) : c, basis());
      first = false;
    }
    return e;
  }

  // --- affine forms --------------------------------------------------------

  // a*var + b; integer coefficients unless `rational`
  std::pair<Scalar, Scalar> affine(const std::string& var, bool rational, const std::string& what) {
    Scalar slope = 0, offset = 0;
    bool first = true;
    while (true) {
      bool negative = false;
      if (is_punct("+") || is_punct("-")) {
        negative = next().text == "-";
      } else if (!first) {
        break;
      }
      first = false;
      const Token& t = peek();
      Scalar c = 1;
      bool has_number = false;
      if (t.kind == Token::Kind::Number) {
        c = rational ? magnitude() : Scalar(integer());
        has_number = true;
        if (is_punct("*")) next();
      }
      if (peek().kind == Token::Kind::Ident) {
        const Token& v = peek();
        if (v.text != var) {
          if (v.text == "n" || v.text == "k" || v.text == "m")
            fail(v, "index variable '" + v.text + "' is not in scope here", {"'" + var + "'"});
          if (!has_number) fail(v, "unexpected '" + v.text + "'", {what});
          break;
        }
        next();
        if (is_punct("^") || (is_punct("*") && is_word(var, 1)) || is_word(var)) fail(v, "non-affine index form");
        slope += negative ? Scalar(-c) : c;
      } else if (has_number) {
        if (is_punct("(")) fail(peek(), "non-affine index form");
        offset += negative ? Scalar(-c) : c;
      } else {
        fail(t, "unexpected '" + t.text + "'", {what});
      }
    }
    return {slope, offset};
  }

  IndexForm index_form(const std::string& var) {
    const Token& t = peek();
    auto [a, b] = affine(var, false, "index form");
    if (a.get_den() != 1 || b.get_den() != 1) fail(t, "index forms need integer coefficients");
    if (a < 1) fail(t, "index form must increase with " + var);
    return {a.get_num().get_si(), b.get_num().get_si()};
  }

  StencilTermExpr stencil_term(const std::string& var) {
    StencilTermExpr term;
    auto [g, c] = affine("n", true, "coefficient");
    term.coef = c;
    term.growth = g;
    expect_punct("@");
    const Token& t = peek();
    if (!is_word("e") && !is_word("g")) fail(t, "unexpected '" + t.text + "'", {"'e(..)'", "'g(..)'"});
    term.target = next().text[0];
    expect_punct("(");
    if (is_word("row")) {
      if (term.target != 'e') fail(peek(), "'row' only indexes e(..)");
      next();
      term.row_variable = true;
      expect_punct(",");
      term.index = index_form(var);
    } else if (peek().kind == Token::Kind::Number && is_punct(",", 1)) {
      term.has_row = true;
      term.row = integer();
      next();
      term.index = index_form(var);
    } else {
      term.index = index_form(var);
    }
    expect_punct(")");
    return term;
  }

  StencilClause stencil_clause() {
    StencilClause st;
    expect_word("atoms");
    expect_word("n");
    expect_punct(">");
    st.threshold = integer();
    std::string var = "n";
    if (is_punct(",")) {
      next();
      expect_word("n");
      expect_punct("=");
      const Token& t = peek();
      auto form = index_form("k");
      if (form.slope < 2) fail(t, "a residue class needs modulus >= 2");
      st.modulus = form.slope;
      st.residue = form.offset;
      var = "k";
    }
    expect_punct("->");
    expect_word("stencil");
    expect_punct("{");
    if (!is_punct("}")) {
      st.terms.push_back(stencil_term(var));
      while (is_punct(",")) {
        next();
        st.terms.push_back(stencil_term(var));
      }
    }
    expect_punct("}");
    return st;
  }

  Clause clause() {
    const Token& t = peek();
    if (is_word("atom")) {
      next();
      AtomClause a;
      if (is_punct("(")) {
        next();
        a.two_index = true;
        a.row = integer();
        expect_punct(",");
        a.col = integer();
        expect_punct(")");
      } else {
        a.col = integer();
      }
      expect_punct("->");
      a.image = element();
      return a;
    }
    if (is_word("atoms")) return stencil_clause();
    if (is_word("unit")) {
      next();
      expect_punct("->");
      return UnitClause{element()};
    }
    if (is_word("rowunit")) {
      next();
      if (is_punct("*")) {
        next();
        expect_punct("->");
        expect_word("row");
        expect_punct("(");
        RowTemplateClause r;
        while (!is_punct("|")) {
          r.line.prefix.push_back(signed_scalar());
          if (!is_punct("|")) expect_punct(",");
        }
        next();
        r.line.tail = signed_scalar();
        expect_punct(")");
        return r;
      }
      RowUnitClause r;
      r.row = integer();
      expect_punct("->");
      r.image = element();
      return r;
    }
    if (is_word("matrix")) {
      next();
      MatrixClause m;
      expect_punct("[");
      do {
        if (is_punct(",")) next();
        expect_punct("[");
        std::vector<Scalar> row{signed_scalar()};
        while (is_punct(",")) {
          next();
          row.push_back(signed_scalar());
        }
        expect_punct("]");
        if (!m.rows.empty() && row.size() != m.rows.front().size()) fail(t, "matrix rows differ in length");
        m.rows.push_back(std::move(row));
      } while (is_punct(","));
      expect_punct("]");
      return m;
    }
    fail(t, "unexpected '" + t.text + "'", {"'atom'", "'atoms'", "'unit'", "'rowunit'", "'matrix'", "'}'"});
  }

  OperatorDecl operator_decl(const SpecFile& spec) {
    expect_word("operator");
    const Token& name_tok = peek();
    OperatorDecl op;
    op.name = ident("operator name");
    for (const auto& o : spec.operators)
      if (o.name == op.name) fail(name_tok, "operator '" + op.name + "' declared twice");
    expect_punct(":");
    op.domain = space_ref(spec);
    expect_punct("->");
    op.codomain = space_ref(spec);
    expect_punct("{");
    while (!is_punct("}")) {
      if (at_end()) fail(peek(), "", {"'}'"});
      op.clauses.push_back(clause());
    }
    next();
    return op;
  }

  std::string operator_ref(const SpecFile& spec) {
    const Token& t = peek();
    std::string name = ident("operator name");
    for (const auto& o : spec.operators)
      if (o.name == name) return name;
    fail(t, "undeclared operator '" + name + "'");
  }

  Directive directive(const SpecFile& spec) {
    Directive d;
    const std::string word = next().text;
    if (word == "check") {
      const Token& t = peek();
      std::string what = ident("property");
      if (what != "order_bounded" && what != "order_continuous")
        fail(t, "unknown property '" + what + "'", {"'order_bounded'", "'order_continuous'"});
      d.command = "check";
      d.args = {what, operator_ref(spec)};
    } else if (word == "classify") {
      d.command = "classify";
      d.args.push_back(space_ref(spec));
      d.args.push_back(space_ref(spec));
    } else {
      d.command = word;
      for (auto& ch : d.command)
        if (ch == '_') ch = '-';
      d.args = {operator_ref(spec)};
    }
    return d;
  }
};

// --- printing -------------------------------------------------------------

std::string print_basis(const BasisRef& b) {
  switch (b.kind) {
    case BasisRef::Kind::Unit:
      return "one";
    case BasisRef::Kind::RowUnit:
      return "ru(" + std::to_string(b.a) + ")";
    case BasisRef::Kind::Atom:
    case BasisRef::Kind::Token: {
      std::string head = b.kind == BasisRef::Kind::Atom ? "e(" : "g(";
      if (b.two_index) return head + std::to_string(b.a) + ", " + std::to_string(b.b) + ")";
      return head + std::to_string(b.b) + ")";
    }
  }
  return "?";
}

std::string print_element(const ElemExpr& e) {
  if (e.terms.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < e.terms.size(); ++i) {
    const auto& [c, b] = e.terms[i];
    bool negative = c < 0;
    Scalar mag = negative ? Scalar(-c) : c;
    if (i == 0) {
      out += negative ? "-" : "";
    } else {
      out += negative ? " - " : " + ";
    }
    if (mag != 1) out += to_string(mag) + " ";
    out += print_basis(b);
  }
  return out;
}

std::string print_affine(const Scalar& slope, const Scalar& offset, const std::string& var) {
  std::string out;
  if (slope != 0) {
    if (slope == -1) {
      out = "-";
    } else if (slope != 1) {
      out = to_string(slope) + "*";
    }
    out += var;
  }
  if (offset != 0 || slope == 0) {
    if (out.empty()) return to_string(offset);
    out += offset < 0 ? " - " + to_string(Scalar(-offset)) : " + " + to_string(offset);
  }
  return out;
}

std::string print_index(const IndexForm& f, const std::string& var) {
  std::string out = (f.slope == 1 ? "" : std::to_string(f.slope)) + var;
  if (f.offset > 0) out += "+" + std::to_string(f.offset);
  if (f.offset < 0) out += std::to_string(f.offset);
  return out;
}

std::string print_clause(const Clause& c) {
  std::ostringstream out;
  if (auto* a = std::get_if<AtomClause>(&c)) {
    out << "atom ";
    if (a->two_index) {
      out << "(" << a->row << ", " << a->col << ")";
    } else {
      out << a->col;
    }
    out << " -> " << print_element(a->image);
  } else if (auto* s = std::get_if<StencilClause>(&c)) {
    std::string var = s->modulus > 1 ? "k" : "n";
    out << "atoms n > " << s->threshold;
    if (s->modulus > 1) out << ", n = " << print_index({s->modulus, s->residue}, "k");
    out << " -> stencil {";
    for (std::size_t i = 0; i < s->terms.size(); ++i) {
      const auto& t = s->terms[i];
      out << (i ? ", " : " ") << print_affine(t.growth, t.coef, "n") << " @ " << t.target << "(";
      if (t.row_variable) out << "row, ";
      if (t.has_row) out << t.row << ", ";
      out << print_index(t.index, var) << ")";
    }
    out << (s->terms.empty() ? "}" : " }");
  } else if (auto* u = std::get_if<UnitClause>(&c)) {
    out << "unit -> " << print_element(u->image);
  } else if (auto* r = std::get_if<RowUnitClause>(&c)) {
    out << "rowunit " << r->row << " -> " << print_element(r->image);
  } else if (auto* t = std::get_if<RowTemplateClause>(&c)) {
    out << "rowunit * -> row (";
    for (const auto& v : t->line.prefix) out << to_string(v) << ", ";
    out << "| " << to_string(t->line.tail) << ")";
  } else if (auto* m = std::get_if<MatrixClause>(&c)) {
    out << "matrix [";
    for (std::size_t i = 0; i < m->rows.size(); ++i) {
      out << (i ? ", [" : "[");
      for (std::size_t j = 0; j < m->rows[i].size(); ++j) out << (j ? ", " : "") << to_string(m->rows[i][j]);
      out << "]";
    }
    out << "]";
  }
  return out.str();
}

}  // namespace

ParseError::ParseError(int l, int c, const std::string& message, std::set<std::string> exp)
    : Error(describe_error(l, c, message, exp)), line(l), column(c), expected(std::move(exp)) {}

SpaceDesc parse_space_kind(const std::string& word) {
  if (word == "l0inf") return SpaceDesc::tail_seq();
  if (word == "c") return SpaceDesc::convergent();
  if (word == "CK") return SpaceDesc::fin_dev();
  if (word == "E_K") return SpaceDesc::e_k();
  if (word == "grid") return SpaceDesc::finite_grid();
  if (word.size() > 1 && word[0] == 'R') {
    std::string digits = word.substr(word[1] == '^' ? 2 : 1);
    if (!digits.empty() && digits.size() <= 2 && digits.find_first_not_of("0123456789") == std::string::npos) {
      int n = std::stoi(digits);
      if (n >= 1 && n <= 64) return SpaceDesc::fin_dim(n);
    }
  }
  throw Error("unknown space kind '" + word + "'");
}

std::string space_keyword(const SpaceDesc& s) {
  switch (s.kind) {
    case SpaceKind::FinDim:
      return "R^" + std::to_string(s.dim);
    case SpaceKind::TailSeq:
      return s.as_c ? "c" : "l0inf";
    case SpaceKind::FinDev:
      return "CK";
    case SpaceKind::RowBlock:
      return s.free_rows ? "E_K" : "grid";
  }
  return "?";
}

SpecFile parse_spec(const std::string& text) { return Parser(lex(text)).file(); }

std::string print_spec(const SpecFile& spec) {
  std::ostringstream out;
  for (const auto& s : spec.spaces) out << "space " << s.name << " = " << space_keyword(s.space) << "\n";
  for (const auto& op : spec.operators) {
    if (out.tellp() > 0) out << "\n";
    out << "operator " << op.name << " : " << op.domain << " -> " << op.codomain << " {\n";
    for (const auto& c : op.clauses) out << "  " << print_clause(c) << "\n";
    out << "}\n";
  }
  if (!spec.directives.empty()) out << "\n";
  for (const auto& d : spec.directives) {
    std::string word = d.command;
    for (auto& ch : word)
      if (ch == '-') ch = '_';
    out << word;
    for (const auto& a : d.args) out << " " << a;
    out << "\n";
  }
  return out.str();
}

// --- building operators -----------------------------------------------------

const SpaceDesc& SpecFile::space(const std::string& name) const {
  for (const auto& s : spaces)
    if (s.name == name) return s.space;
  static thread_local SpaceDesc keyword;
  keyword = parse_space_kind(name);
  return keyword;
}

namespace {

Element build_element(const ElemExpr& e, const SpaceDesc& space) {
  Element x = Element::zero(space);
  for (const auto& [c, b] : e.terms) {
    Element v = Element::zero(space);
    switch (b.kind) {
      case BasisRef::Kind::Unit:
        v = Element::unit(space);
        break;
      case BasisRef::Kind::RowUnit:
        if (!space.has_row_units()) throw Error("ru(..) needs an E_K space, not " + space.name());
        v = Element::row_unit(space, b.a);
        break;
      case BasisRef::Kind::Atom:
        if (space.kind == SpaceKind::FinDev) throw Error("C(K) points are written g(..)");
        if (b.two_index != (space.kind == SpaceKind::RowBlock))
          throw Error(std::string("atoms of ") + space.name() + (b.two_index ? " take one index" : " take two indices"));
        v = Element::atom(space, {b.two_index ? b.a : 0, b.b});
        break;
      case BasisRef::Kind::Token:
        if (space.kind != SpaceKind::FinDev) throw Error("g(..) names points of C(K), not of " + space.name());
        v = Element::atom(space, {b.two_index ? b.a : 0, b.b});
        break;
    }
    x = x + c * v;
  }
  return x;
}

}  // namespace

Operator SpecFile::build(const std::string& name) const {
  if (operators.empty()) throw Error("the spec file declares no operator");
  const OperatorDecl* decl = &operators.front();
  if (!name.empty()) {
    decl = nullptr;
    for (const auto& o : operators)
      if (o.name == name) decl = &o;
    if (!decl) throw Error("no operator named '" + name + "'");
  }
  const SpaceDesc dom = space(decl->domain), cod = space(decl->codomain);
  Operator t(dom, cod);

  std::optional<TailStencil> stencil;
  for (const auto& c : decl->clauses) {
    if (auto* a = std::get_if<AtomClause>(&c)) {
      if (a->two_index != (dom.kind == SpaceKind::RowBlock))
        throw Error("atom indices of " + dom.name() + (a->two_index ? " take one index" : " take two indices"));
      t.set_atom_image({a->two_index ? a->row : 0, a->col}, build_element(a->image, cod));
    } else if (auto* s = std::get_if<StencilClause>(&c)) {
      if (!stencil) {
        stencil = TailStencil{};
        stencil->threshold = s->threshold;
        stencil->modulus = s->modulus;
        stencil->terms.assign(s->modulus, {});
      }
      if (stencil->threshold != s->threshold || stencil->modulus != s->modulus)
        throw Error("all stencil clauses of an operator share one threshold and modulus");
      std::int64_t residue = floor_mod(s->residue, s->modulus);
      std::int64_t shift = floor_div(s->residue, s->modulus);
      for (const auto& term : s->terms) {
        if (dom.kind == SpaceKind::RowBlock && !term.row_variable && cod.kind == SpaceKind::RowBlock)
          throw Error("stencils on row-block domains act row by row: write e(row, ..)");
        if (term.row_variable && dom.kind != SpaceKind::RowBlock) throw Error("'row' needs a row-block domain");
        if ((term.target == 'g') != (cod.kind == SpaceKind::FinDev))
          throw Error("stencil target does not match the codomain " + cod.name());
        StencilTerm st;
        st.coef = term.coef;
        st.growth = term.growth;
        st.slope = term.index.slope;
        st.offset = term.index.offset + term.index.slope * shift;
        st.row = term.has_row ? term.row : 0;
        if (cod.kind == SpaceKind::RowBlock && dom.kind != SpaceKind::RowBlock && !term.has_row)
          throw Error("stencil targets in " + cod.name() + " need a row: e(r, ..)");
        stencil->terms[residue].push_back(st);
      }
    } else if (auto* u = std::get_if<UnitClause>(&c)) {
      if (!dom.unit_is_generator()) throw Error("R^n has no separate unit image");
      t.set_unit_image(build_element(u->image, cod));
    } else if (auto* r = std::get_if<RowUnitClause>(&c)) {
      if (!dom.has_row_units()) throw Error("row units exist only in E_K");
      t.set_row_unit_image(r->row, build_element(r->image, cod));
    } else if (auto* tp = std::get_if<RowTemplateClause>(&c)) {
      if (!dom.has_row_units() || cod.kind != SpaceKind::RowBlock)
        throw Error("row templates need E_K -> row-block operators");
      t.set_row_unit_template(tp->line);
    } else if (auto* m = std::get_if<MatrixClause>(&c)) {
      if (dom.kind != SpaceKind::FinDim || cod.kind != SpaceKind::FinDim) throw Error("matrix clauses need R^n spaces");
      if (static_cast<int>(m->rows.size()) != cod.dim || static_cast<int>(m->rows.front().size()) != dom.dim)
        throw Error("matrix shape does not match " + dom.name() + " -> " + cod.name());
      for (int j = 1; j <= dom.dim; ++j) {
        std::vector<Scalar> col;
        for (const auto& row : m->rows) col.push_back(row[j - 1]);
        t.set_atom_image({0, j}, Element::fin_dim(col));
      }
    }
  }
  if (stencil) t.set_stencil(*stencil);
  return t;
}

}  // namespace rieszkit
