#include "frobsplit/formats.hpp"

#include <fstream>
#include <sstream>

namespace frobsplit {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(trim(item));
  return parts;
}

// "key=value" tokens on a directive line
std::map<std::string, std::string> keyvals(const std::vector<std::string>& tokens,
                                           std::size_t from) {
  std::map<std::string, std::string> kv;
  for (std::size_t i = from; i < tokens.size(); ++i) {
    auto eq = tokens[i].find('=');
    if (eq == std::string::npos) throw Error("ParseError", "expected key=value: " + tokens[i]);
    kv[tokens[i].substr(0, eq)] = tokens[i].substr(eq + 1);
  }
  return kv;
}

std::vector<std::string> tokens_of(const std::string& line) {
  std::vector<std::string> toks;
  std::stringstream ss(line);
  std::string t;
  while (ss >> t) toks.push_back(t);
  return toks;
}

long to_long(const std::string& s) {
  std::size_t pos = 0;
  long v = std::stol(s, &pos);
  if (pos != s.size()) throw Error("ParseError", "bad integer: " + s);
  return v;
}

}  // namespace

std::vector<long> parse_int_list(const std::string& s) {
  std::vector<long> out;
  std::string body = trim(s);
  if (!body.empty() && body.front() == '(') {
    if (body.back() != ')') throw Error("ParseError", "unbalanced parentheses: " + s);
    body = body.substr(1, body.size() - 2);
  }
  for (const auto& item : split(body, ','))
    if (!item.empty()) out.push_back(to_long(item));
  return out;
}

std::map<std::string, QuasiParType> parse_type_list(const std::string& s) {
  std::map<std::string, QuasiParType> out;
  int idx = 1;
  for (const auto& part : split(s, ';')) {
    if (part.empty()) continue;
    QuasiParType t;
    for (long v : parse_int_list(part)) t.n.push_back(static_cast<int>(v));
    out["x" + std::to_string(idx++)] = t;
  }
  return out;
}

ParData parse_pardata(const std::string& text) {
  ParData w;
  bool have_r = false, have_k = false;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    auto toks = tokens_of(line);
    if (toks[0] == "point") {
      if (toks.size() < 2) throw Error("ParseError", "point needs a label");
      auto kv = keyvals(toks, 2);
      if (!kv.count("type") || !kv.count("weight"))
        throw Error("ParseError", "point needs type= and weight=");
      PointDatum pd;
      for (long v : parse_int_list(kv["type"])) pd.type.n.push_back(static_cast<int>(v));
      for (long v : parse_int_list(kv["weight"])) pd.weight.a.push_back(v);
      w.points[toks[1]] = pd;
    } else {
      auto kv = keyvals(toks, 0);
      for (const auto& [key, val] : kv) {
        if (key == "rank") {
          w.r = static_cast<int>(to_long(val));
          have_r = true;
        } else if (key == "degree") {
          w.d = to_long(val);
        } else if (key == "genus") {
          w.g = static_cast<int>(to_long(val));
        } else if (key == "k") {
          w.k = to_long(val);
          have_k = true;
        } else {
          throw Error("ParseError", "unknown key: " + key);
        }
      }
    }
  }
  if (!have_r || !have_k) throw Error("ParseError", "weight data needs rank= and k=");
  w.validate();
  return w;
}

namespace {

P1Point parse_point_coord(const std::string& s, const PrimeField& f) {
  if (s == "inf" || s == "infty" || s == "oo") return P1Point{true, 0};
  return P1Point{false, f.reduce_signed(to_long(s))};
}

FpMat parse_matrix(const std::string& s, const PrimeField& f, int r) {
  std::vector<FpVec> rows;
  for (const auto& row : split(s, ';')) {
    FpVec v;
    for (long x : parse_int_list(row)) v.push_back(f.reduce_signed(x));
    if (static_cast<int>(v.size()) != r) throw Error("ParseError", "matrix row of wrong length");
    rows.push_back(v);
  }
  if (static_cast<int>(rows.size()) != r) throw Error("ParseError", "matrix needs r rows");
  return FpMat::from_rows(f, rows);
}

}  // namespace

FlagConfig parse_flagconfig(const std::string& text) {
  std::stringstream ss(text);
  std::string line;
  int r = 0;
  long q = 0;
  std::vector<std::string> body;
  while (std::getline(ss, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    auto toks = tokens_of(line);
    if (toks[0] == "point" || toks[0] == "line" || toks[0] == "hyperplane") {
      body.push_back(line);
      continue;
    }
    auto kv = keyvals(toks, 0);
    for (const auto& [key, val] : kv) {
      if (key == "rank") r = static_cast<int>(to_long(val));
      else if (key == "field") q = to_long(val);
      else throw Error("ParseError", "unknown key: " + key);
    }
  }
  if (r < 2 || q < 2) throw Error("ParseError", "flag config needs rank= and field=");
  PrimeField f(static_cast<fp_t>(q));
  FlagConfig cfg(f);
  cfg.r = r;
  for (const auto& bl : body) {
    auto toks = tokens_of(bl);
    if (toks.size() < 2) throw Error("ParseError", "directive needs a label: " + bl);
    const std::string& label = toks[1];
    auto kv = keyvals(toks, 2);
    if (!kv.count("at")) throw Error("ParseError", "directive needs at=: " + bl);
    cfg.at[label] = parse_point_coord(kv["at"], f);
    if (toks[0] == "point") {
      if (!kv.count("flag")) throw Error("ParseError", "point needs flag=: " + bl);
      cfg.full_flags.emplace(label, parse_matrix(kv["flag"], f, r));
    } else if (toks[0] == "line") {
      if (!kv.count("span")) throw Error("ParseError", "line needs span=: " + bl);
      FpVec v;
      for (long x : parse_int_list(kv["span"])) v.push_back(f.reduce_signed(x));
      if (static_cast<int>(v.size()) != r) throw Error("ParseError", "span of wrong length");
      cfg.ell_y1 = Subspace::span_rows(f, {v});
    } else {  // hyperplane
      if (!kv.count("normal")) throw Error("ParseError", "hyperplane needs normal=: " + bl);
      if (r != 2)
        throw Error("ParseError",
                    "hyperplane normal determines the flag line only for rank 2; "
                    "use 'line <label> at=<t> span=<row>' instead");
      FpVec n;
      for (long x : parse_int_list(kv["normal"])) n.push_back(f.reduce_signed(x));
      if (static_cast<int>(n.size()) != r) throw Error("ParseError", "normal of wrong length");
      // the flag line is the kernel of the normal
      FpVec v(2);
      v[0] = f.neg(n[1]);
      v[1] = n[0];
      cfg.ell_y1 = Subspace::span_rows(f, {v});
    }
  }
  cfg.validate();
  return cfg;
}

std::string read_file_or_inline(const std::string& arg) {
  std::ifstream in(arg);
  if (in.good()) {
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }
  return arg;
}

}  // namespace frobsplit
