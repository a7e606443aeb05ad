#include "vvmf/io.hpp"

#include <fstream>
#include <sstream>

namespace vvmf {

namespace {

const Json& req(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

Int get_int(const Json& j) {
  if (j.is_number_integer()) return Int(std::to_string(j.get<long long>()));
  if (j.is_number_unsigned()) return Int(std::to_string(j.get<unsigned long long>()));
  if (j.is_string()) {
    Int x;
    if (x.set_str(j.get<std::string>(), 10) != 0) throw ParseError("bad integer \"" + j.get<std::string>() + "\"");
    return x;
  }
  throw ParseError("expected an integer, got " + j.dump());
}

long get_long(const Json& j) {
  try {
    return to_long(get_int(j));
  } catch (const DomainError&) {
    throw ParseError("integer out of range: " + j.dump());
  }
}

Rat get_rat(const Json& j) {
  if (j.is_string()) return parse_rat(j.get<std::string>());
  if (j.is_number_integer() || j.is_number_unsigned()) return Rat(get_int(j));
  throw ParseError("expected a fraction string, got " + j.dump());
}

Json int_json(const Int& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

const Json& array_of(const Json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
  return j;
}

Json rat_matrix(const std::vector<std::vector<Rat>>& m) {
  Json out = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (const Rat& x : row) r.push_back(format_rat(x));
    out.push_back(r);
  }
  return out;
}

Json int_matrix(const IntMatrix& m) {
  Json out = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (const Int& x : row) r.push_back(int_json(x));
    out.push_back(r);
  }
  return out;
}

template <class F>
auto translate(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what());
  }
}

}  // namespace

Json to_json(const CycNum& c) {
  Json coeffs = Json::array();
  for (const Rat& x : c.coeffs()) coeffs.push_back(format_rat(x));
  return Json{{"modulus", c.modulus()}, {"coeffs", coeffs}};
}

CycNum cycnum_from_json(const Json& j) {
  return translate([&] {
    if (j.is_string() || j.is_number_integer()) return CycNum(get_rat(j));
    long m = get_long(req(j, "modulus"));
    if (m < 1) throw ParseError("modulus must be positive");
    std::vector<Rat> coeffs;
    for (const Json& x : array_of(req(j, "coeffs"), "coeffs")) coeffs.push_back(get_rat(x));
    return CycNum::from_coeffs(m, coeffs);
  });
}

Json to_json(const MetaElem& g) {
  return Json{{"m", {{int_json(g.m.a), int_json(g.m.b)}, {int_json(g.m.c), int_json(g.m.d)}}}, {"sign", g.sign}};
}

Mat2 mat2_from_json(const Json& j) {
  return translate([&] {
    const Json& m = j.is_object() ? req(j, "m") : j;
    if (!m.is_array() || m.size() != 2 || !m[0].is_array() || !m[1].is_array() || m[0].size() != 2 ||
        m[1].size() != 2)
      throw ParseError("matrix must be [[a, b], [c, d]]");
    return Mat2{get_int(m[0][0]), get_int(m[0][1]), get_int(m[1][0]), get_int(m[1][1])};
  });
}

MetaElem meta_from_json(const Json& j) {
  return translate([&] {
    MetaElem g{mat2_from_json(j), 1};
    if (j.is_object() && j.contains("sign")) {
      long s = get_long(j.at("sign"));
      if (s != 1 && s != -1) throw ParseError("sign must be 1 or -1");
      g.sign = static_cast<int>(s);
    }
    return g;
  });
}

IntMatrix gram_from_json(const Json& j) {
  return translate([&] {
    const Json& m = j.is_object() ? req(j, "gram") : j;
    IntMatrix g;
    for (const Json& row : array_of(m, "gram")) {
      g.emplace_back();
      for (const Json& x : array_of(row, "gram row")) g.back().push_back(get_int(x));
    }
    return g;
  });
}

DiscForm discform_from_json(const Json& j) {
  return translate([&] {
    if (j.is_array() || j.contains("gram")) return DiscForm::from_gram(gram_from_json(j));
    std::vector<long> orders;
    for (const Json& x : array_of(req(j, "orders"), "orders")) orders.push_back(get_long(x));
    std::vector<Rat> qdiag;
    for (const Json& x : array_of(req(j, "qdiag"), "qdiag")) qdiag.push_back(get_rat(x));
    std::vector<std::vector<Rat>> bmat;
    if (j.contains("bmat")) {
      for (const Json& row : array_of(j.at("bmat"), "bmat")) {
        bmat.emplace_back();
        for (const Json& x : array_of(row, "bmat row")) bmat.back().push_back(get_rat(x));
      }
    } else {
      // Cyclic or diagonal data: B(g_i, g_i) = 2 Q(g_i), off-diagonal zero.
      bmat.assign(qdiag.size(), std::vector<Rat>(qdiag.size(), 0));
      for (std::size_t i = 0; i < qdiag.size(); ++i) bmat[i][i] = frac(2 * qdiag[i]);
    }
    return DiscForm::from_data(orders, qdiag, bmat);
  });
}

Json to_json(const DiscForm& a) {
  Json qd = Json::array();
  for (const Rat& x : a.qdiag()) qd.push_back(format_rat(x));
  Json gs = Json::object();
  for (long d : divisors(a.level())) gs[std::to_string(d)] = to_json(a.gauss_sum(d));
  Json out{{"orders", a.orders()}, {"qdiag", qd},        {"bmat", rat_matrix(a.bmat())},
           {"order", a.order()},   {"level", a.level()}, {"signature", a.signature()},
           {"gauss_sums", gs}};
  if (a.has_lattice()) out["gram"] = int_matrix(a.gram());
  return out;
}

Json to_json(const RepMatrix& m, bool approx) {
  Json rows = Json::array(), fl = Json::array();
  for (long i = 0; i < m.dim(); ++i) {
    Json r = Json::array(), f = Json::array();
    for (long k = 0; k < m.dim(); ++k) {
      r.push_back(to_json(m.at(i, k)));
      if (approx) {
        auto z = m.at(i, k).embed();
        f.push_back({z.real(), z.imag()});
      }
    }
    rows.push_back(r);
    fl.push_back(f);
  }
  Json out{{"dim", m.dim()}, {"modulus", m.modulus()}, {"entries", rows}};
  if (approx) out["entries_approx"] = fl;
  return out;
}

RepMatrix repmatrix_from_json(const Json& j) {
  return translate([&] {
    long n = get_long(req(j, "dim"));
    long mod = get_long(req(j, "modulus"));
    if (n < 0 || mod < 1) throw ParseError("bad matrix dimensions");
    const Json& rows = array_of(req(j, "entries"), "entries");
    if (static_cast<long>(rows.size()) != n) throw ParseError("entries has the wrong number of rows");
    RepMatrix m(n, mod);
    for (long i = 0; i < n; ++i) {
      if (!rows[i].is_array() || static_cast<long>(rows[i].size()) != n) throw ParseError("entries row has the wrong length");
      for (long k = 0; k < n; ++k) m.set(i, k, cycnum_from_json(rows[i][k]));
    }
    return m;
  });
}

Json to_json(const FourierExpansion& f) {
  const DiscForm& a = f.form();
  Json coeffs = Json::array();
  for (const auto& [key, c] : f.coeffs())
    coeffs.push_back(Json{{"lambda", a.element(key.lambda).residues}, {"n", format_rat(key.n)}, {"c", to_json(c)}});
  Json out{{"weight", format_rat(f.weight())}, {"prec", format_rat(f.prec())}, {"coeffs", coeffs}};
  if (a.has_lattice())
    out["gram"] = int_matrix(a.gram());
  else
    out["discform"] = to_json(a);
  return out;
}

FourierExpansion expansion_from_json(const Json& j) {
  return translate([&] {
    std::shared_ptr<const DiscForm> form;
    if (j.is_object() && j.contains("gram"))
      form = std::make_shared<const DiscForm>(DiscForm::from_gram(gram_from_json(j.at("gram"))));
    else
      form = std::make_shared<const DiscForm>(discform_from_json(req(j, "discform")));
    FourierExpansion f(form, get_rat(req(j, "weight")), get_rat(req(j, "prec")));
    for (const Json& e : array_of(req(j, "coeffs"), "coeffs")) {
      DfElem x;
      const Json& lam = req(e, "lambda");
      if (lam.is_array()) {
        for (const Json& r : lam) x.residues.push_back(get_long(r));
      } else {
        x = form->element(get_long(lam));
      }
      if (x.residues.size() != form->rank()) throw ParseError("lambda has the wrong number of residues");
      for (std::size_t i = 0; i < x.residues.size(); ++i) x.residues[i] = mod(x.residues[i], form->orders()[i]);
      f.add(form->index_of(x), get_rat(req(e, "n")), cycnum_from_json(req(e, "c")));
    }
    return f;
  });
}

Word parse_word(const std::string& text) {
  std::string s = text;
  for (char& ch : s)
    if (ch == ',') ch = ' ';
  std::istringstream is(s);
  Word w;
  std::string tok;
  while (is >> tok) {
    std::string head = tok.substr(0, 1), tail;
    if (tok.size() > 1) {
      if (tok[1] != '^') throw ParseError("bad word token \"" + tok + "\"");
      tail = tok.substr(2);
    }
    Int e = 1;
    if (!tail.empty() && e.set_str(tail[0] == '+' ? tail.substr(1) : tail, 10) != 0)
      throw ParseError("bad exponent in \"" + tok + "\"");
    if (head == "S") {
      if (e == 1)
        w.push_back({TokenKind::S, 1});
      else if (e == -1)
        w.push_back({TokenKind::Sinv, 1});
      else
        for (Int i = 0; i < abs(e); ++i) w.push_back({e > 0 ? TokenKind::S : TokenKind::Sinv, 1});
    } else if (head == "T") {
      w.push_back({TokenKind::T, e});
    } else if (head == "Z") {
      w.push_back({TokenKind::Z, mod(e, Int(4))});
    } else {
      throw ParseError("unknown generator in \"" + tok + "\"");
    }
  }
  return w;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write " + path.string());
  out << dump(j);
}

}  // namespace vvmf
