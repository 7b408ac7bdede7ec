// HOA v1 ingestion (see automaton.hh for the supported subset).

#include <algorithm>
#include <cctype>
#include <istream>
#include <ostream>
#include <sstream>

#include "bonsai/automaton.hh"

namespace bonsai {

namespace {

enum class tok_kind { header, ident, integer, str, punct, body, end, eof };

struct token {
  tok_kind kind;
  std::string text;
  long value = 0;
  int line = 0, col = 0;
};

class lexer {
 public:
  explicit lexer(std::istream& in) : in_(in) { advance(); }

  const token& peek() const { return tok_; }
  token next() {
    token t = tok_;
    advance();
    return t;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw parse_error(tok_.line, tok_.col, msg);
  }

 private:
  int get() {
    int c = in_.get();
    if (c == '\n') {
      ++line_;
      col_ = 0;
    } else if (c != EOF) {
      ++col_;
    }
    return c;
  }
  int peek_char() { return in_.peek(); }

  void skip_space_and_comments() {
    for (;;) {
      int c = peek_char();
      if (c == EOF) return;
      if (std::isspace(c)) {
        get();
        continue;
      }
      if (c == '/') {
        get();
        if (peek_char() != '*')
          throw parse_error(line_, col_, "stray '/'");
        get();
        int depth = 1;
        while (depth > 0) {
          int d = get();
          if (d == EOF) throw parse_error(line_, col_, "unterminated comment");
          if (d == '*' && peek_char() == '/') {
            get();
            --depth;
          } else if (d == '/' && peek_char() == '*') {
            get();
            ++depth;
          }
        }
        continue;
      }
      return;
    }
  }

  void advance() {
    skip_space_and_comments();
    tok_.line = line_ + 1;
    tok_.col = col_ + 1;
    int c = peek_char();
    if (c == EOF) {
      tok_ = {tok_kind::eof, "", 0, tok_.line, tok_.col};
      return;
    }
    if (c == '"') {
      get();
      std::string s;
      for (;;) {
        int d = get();
        if (d == EOF) throw parse_error(tok_.line, tok_.col, "unterminated string");
        if (d == '"') break;
        if (d == '\\') {
          int e = get();
          if (e == EOF) throw parse_error(tok_.line, tok_.col, "unterminated string");
          s += static_cast<char>(e);
        } else {
          s += static_cast<char>(d);
        }
      }
      tok_ = {tok_kind::str, std::move(s), 0, tok_.line, tok_.col};
      return;
    }
    if (std::isdigit(c)) {
      long v = 0;
      std::string s;
      while (std::isdigit(peek_char())) {
        int d = get();
        s += static_cast<char>(d);
        v = v * 10 + (d - '0');
      }
      tok_ = {tok_kind::integer, std::move(s), v, tok_.line, tok_.col};
      return;
    }
    if (std::isalpha(c) || c == '_') {
      std::string s;
      while (std::isalnum(peek_char()) || peek_char() == '_' || peek_char() == '-')
        s += static_cast<char>(get());
      if (peek_char() == ':') {
        get();
        tok_ = {tok_kind::header, std::move(s), 0, tok_.line, tok_.col};
      } else {
        tok_ = {tok_kind::ident, std::move(s), 0, tok_.line, tok_.col};
      }
      return;
    }
    if (c == '-') {
      // --BODY-- / --END--
      std::string s;
      while (peek_char() == '-' || std::isalpha(peek_char()))
        s += static_cast<char>(get());
      if (s == "--BODY--") {
        tok_ = {tok_kind::body, std::move(s), 0, tok_.line, tok_.col};
        return;
      }
      if (s == "--END--") {
        tok_ = {tok_kind::end, std::move(s), 0, tok_.line, tok_.col};
        return;
      }
      throw parse_error(tok_.line, tok_.col, "unexpected token '" + s + "'");
    }
    get();
    tok_ = {tok_kind::punct, std::string(1, static_cast<char>(c)), 0, tok_.line, tok_.col};
  }

  std::istream& in_;
  token tok_;
  int line_ = 0, col_ = 0;
};

// label := term ('|' term)*; term := factor ('&' factor)*;
// factor := '!' factor | '(' label ')' | 't' | 'f' | AP-index
class label_parser {
 public:
  label_parser(lexer& lx, bool_engine& eng, const std::vector<var_id>& ap_vars)
    : lx_(lx), eng_(eng), aps_(ap_vars) {}

  bool_fn parse() { return parse_or(); }

 private:
  bool_fn parse_or() {
    bool_fn f = parse_and();
    while (lx_.peek().kind == tok_kind::punct && lx_.peek().text == "|") {
      lx_.next();
      f = eng_.disj(f, parse_and());
    }
    return f;
  }
  bool_fn parse_and() {
    bool_fn f = parse_factor();
    while (lx_.peek().kind == tok_kind::punct && lx_.peek().text == "&") {
      lx_.next();
      f = eng_.conj(f, parse_factor());
    }
    return f;
  }
  bool_fn parse_factor() {
    const token& t = lx_.peek();
    if (t.kind == tok_kind::punct && t.text == "!") {
      lx_.next();
      return eng_.neg(parse_factor());
    }
    if (t.kind == tok_kind::punct && t.text == "(") {
      lx_.next();
      bool_fn f = parse_or();
      if (!(lx_.peek().kind == tok_kind::punct && lx_.peek().text == ")"))
        lx_.fail("expected ')'");
      lx_.next();
      return f;
    }
    if (t.kind == tok_kind::ident && t.text == "t") {
      lx_.next();
      return eng_.tt();
    }
    if (t.kind == tok_kind::ident && t.text == "f") {
      lx_.next();
      return eng_.ff();
    }
    if (t.kind == tok_kind::integer) {
      token n = lx_.next();
      if (n.value < 0 || static_cast<size_t>(n.value) >= aps_.size())
        throw parse_error(n.line, n.col, "AP index out of range: " + n.text);
      return eng_.mk_var(aps_[n.value]);
    }
    lx_.fail("expected a label factor");
  }

  lexer& lx_;
  bool_engine& eng_;
  const std::vector<var_id>& aps_;
};

} // namespace

automaton parse_hoa(std::istream& in, const hoa_options& opts) {
  lexer lx(in);

  std::optional<long> n_states;
  std::optional<long> start;
  std::vector<std::string> ap_names;
  bool saw_ap = false;
  std::vector<uint8_t> controllable; // per AP
  bool saw_controllable = false;
  bool acceptance_ok = false;
  bool saw_acceptance = false;

  if (lx.peek().kind != tok_kind::header || lx.peek().text != "HOA")
    lx.fail("expected 'HOA: v1'");
  lx.next();
  if (lx.peek().kind != tok_kind::ident || lx.peek().text != "v1")
    lx.fail("unsupported HOA version");
  lx.next();

  auto expect_int = [&](const char* what) -> long {
    if (lx.peek().kind != tok_kind::integer)
      lx.fail(std::string("expected an integer for ") + what);
    return lx.next().value;
  };

  while (lx.peek().kind != tok_kind::body) {
    if (lx.peek().kind == tok_kind::eof)
      lx.fail("missing --BODY--");
    if (lx.peek().kind != tok_kind::header)
      lx.fail("expected a header");
    token h = lx.next();
    if (h.text == "States") {
      n_states = expect_int("States:");
    } else if (h.text == "Start") {
      if (start.has_value())
        throw parse_error(h.line, h.col, "multiple initial states are not supported");
      start = expect_int("Start:");
      if (lx.peek().kind == tok_kind::integer ||
          (lx.peek().kind == tok_kind::punct && lx.peek().text == "&"))
        lx.fail("multiple initial states are not supported");
    } else if (h.text == "AP") {
      long count = expect_int("AP:");
      saw_ap = true;
      for (long i = 0; i < count; ++i) {
        if (lx.peek().kind != tok_kind::str)
          lx.fail("expected a quoted AP name");
        ap_names.push_back(lx.next().text);
      }
    } else if (h.text == "Acceptance") {
      saw_acceptance = true;
      long sets = expect_int("Acceptance:");
      // Only "1 Inf(0)" is supported.
      bool ok = sets == 1 && lx.peek().kind == tok_kind::ident
                && lx.peek().text == "Inf";
      if (ok) {
        lx.next();
        ok = lx.peek().kind == tok_kind::punct && lx.peek().text == "(";
        if (ok) lx.next();
        ok = ok && lx.peek().kind == tok_kind::integer && lx.peek().value == 0;
        if (ok) lx.next();
        ok = ok && lx.peek().kind == tok_kind::punct && lx.peek().text == ")";
        if (ok) lx.next();
      }
      if (!ok)
        throw parse_error(h.line, h.col,
                          "unsupported acceptance (only Büchi '1 Inf(0)')");
      acceptance_ok = true;
    } else if (h.text == "acc-name") {
      if (lx.peek().kind != tok_kind::ident || lx.peek().text != "Buchi")
        throw parse_error(h.line, h.col, "unsupported acc-name (only Buchi)");
      lx.next();
    } else if (h.text == "controllable-AP") {
      saw_controllable = true;
      while (lx.peek().kind == tok_kind::integer) {
        long idx = lx.next().value;
        if (static_cast<size_t>(idx) >= controllable.size())
          controllable.resize(idx + 1, 0);
        controllable[idx] = 1;
      }
    } else {
      // Unknown header: skip its value tokens.
      while (lx.peek().kind != tok_kind::header && lx.peek().kind != tok_kind::body
             && lx.peek().kind != tok_kind::eof)
        lx.next();
    }
  }
  lx.next(); // --BODY--

  if (!saw_acceptance)
    lx.fail("missing Acceptance: header");
  if (!acceptance_ok)
    lx.fail("unsupported acceptance");
  if (!n_states.has_value())
    lx.fail("missing States: header");
  if (!start.has_value())
    lx.fail("missing Start: header");
  if (!saw_ap)
    lx.fail("missing AP: header");

  // Resolve the input/output partition.
  controllable.resize(ap_names.size(), 0);
  if (opts.outputs_override.has_value()) {
    std::fill(controllable.begin(), controllable.end(), 0);
    for (const std::string& name : *opts.outputs_override) {
      auto it = std::find(ap_names.begin(), ap_names.end(), name);
      if (it == ap_names.end())
        throw usage_error("--outs names unknown proposition '" + name + "'");
      controllable[it - ap_names.begin()] = 1;
    }
  } else if (!saw_controllable) {
    throw usage_error(
        "no controllable-AP header in the automaton; "
        "supply the output propositions with --outs name,name,...");
  }

  auto engine = std::make_shared<bool_engine>();
  std::vector<var_id> ap_vars(ap_names.size());
  for (size_t i = 0; i < ap_names.size(); ++i)
    if (!controllable[i])
      ap_vars[i] = engine->declare(ap_names[i], var_kind::input);
  for (size_t i = 0; i < ap_names.size(); ++i)
    if (controllable[i])
      ap_vars[i] = engine->declare(ap_names[i], var_kind::output);

  std::vector<transition> transitions;
  std::vector<uint32_t> buchi;
  long current_state = -1;

  auto parse_acc_marks = [&](bool& is_buchi_mark) {
    is_buchi_mark = false;
    if (lx.peek().kind == tok_kind::punct && lx.peek().text == "{") {
      lx.next();
      while (lx.peek().kind == tok_kind::integer) {
        token m = lx.next();
        if (m.value != 0)
          throw parse_error(m.line, m.col, "unsupported acceptance mark");
        is_buchi_mark = true;
      }
      if (!(lx.peek().kind == tok_kind::punct && lx.peek().text == "}"))
        lx.fail("expected '}'");
      lx.next();
    }
  };

  while (lx.peek().kind != tok_kind::end) {
    if (lx.peek().kind == tok_kind::eof)
      lx.fail("missing --END--");
    if (lx.peek().kind == tok_kind::header && lx.peek().text == "State") {
      token h = lx.next();
      long q = expect_int("State:");
      if (q < 0 || q >= *n_states)
        throw parse_error(h.line, h.col, "state index out of range");
      current_state = q;
      if (lx.peek().kind == tok_kind::str)
        lx.next(); // state name, ignored
      bool mark = false;
      parse_acc_marks(mark);
      if (mark) buchi.push_back(static_cast<uint32_t>(q));
    } else if (lx.peek().kind == tok_kind::punct && lx.peek().text == "[") {
      token open = lx.next();
      if (current_state < 0)
        throw parse_error(open.line, open.col, "edge before any State:");
      label_parser lp(lx, *engine, ap_vars);
      bool_fn label = lp.parse();
      if (!(lx.peek().kind == tok_kind::punct && lx.peek().text == "]"))
        lx.fail("expected ']'");
      lx.next();
      long dst = expect_int("edge destination");
      if (dst < 0 || dst >= *n_states)
        throw parse_error(open.line, open.col, "destination state out of range");
      bool mark = false;
      parse_acc_marks(mark);
      if (mark) buchi.push_back(static_cast<uint32_t>(dst));
      if (label == engine->ff()) {
        if (opts.diagnostics)
          *opts.diagnostics << "warning: dropping false-labeled edge "
                            << current_state << " -> " << dst << "\n";
      } else {
        transitions.push_back({static_cast<uint32_t>(current_state),
                               static_cast<uint32_t>(dst), label});
      }
    } else {
      lx.fail("expected 'State:', an edge, or --END--");
    }
  }

  if (*start < 0 || *start >= *n_states)
    throw usage_error("initial state out of range");

  std::vector<var_id> inputs, outputs;
  for (size_t i = 0; i < ap_vars.size(); ++i)
    if (!controllable[i]) inputs.push_back(ap_vars[i]);
  for (size_t i = 0; i < ap_vars.size(); ++i)
    if (controllable[i]) outputs.push_back(ap_vars[i]);

  return automaton(std::move(engine), static_cast<uint32_t>(*n_states),
                   static_cast<uint32_t>(*start), std::move(transitions),
                   std::move(buchi), std::move(inputs), std::move(outputs));
}

automaton parse_hoa_string(const std::string& text, const hoa_options& opts) {
  std::istringstream in(text);
  return parse_hoa(in, opts);
}

} // namespace bonsai
