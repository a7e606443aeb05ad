// vvmf: discriminant forms, Weil representation matrices, theta series and
// Hecke operators from the command line. All files are JSON.

#include "vvmf/theta.hpp"
#include "vvmf/verify.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace vvmf;

namespace {

enum Exit { kOk = 0, kInternal = 1, kParse = 2, kDomain = 3, kPrecision = 4, kVerify = 5 };

void emit(const Json& j, const std::string& out) {
  if (out.empty() || out == "-")
    std::cout << dump(j);
  else
    write_json_file(out, j);
}

Rat rat_option(const std::string& s, const char* what) {
  try {
    return parse_rat(s);
  } catch (const ParseError&) {
    throw ParseError(std::string(what) + ": cannot parse \"" + s + "\" as a fraction");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vector valued modular forms: Weil representations and Hecke operators"};
  app.require_subcommand(1);
  std::string out;

  auto* discform = app.add_subcommand("discform", "Discriminant form of an even lattice");
  std::string df_in;
  discform->add_option("input", df_in, "Gram JSON {\"gram\": [[...]]} or (orders, qdiag, bmat) data")->required();

  auto* rho = app.add_subcommand("rho", "Weil representation matrix");
  std::string rho_form, rho_matrix, rho_word, rho_qn;
  int rho_sign = 1;
  long rho_r = 1;
  bool rho_approx = false;
  rho->add_option("form", rho_form, "Form JSON (gram or discform data)")->required();
  auto* o_mat = rho->add_option("--matrix", rho_matrix, "SL2(Z) matrix as JSON [[a,b],[c,d]]");
  rho->add_option("--sign", rho_sign, "Branch sign of the metaplectic lift (1 or -1)")->check(CLI::IsMember({1, -1}));
  auto* o_word = rho->add_option("--word", rho_word, "Word in S, S^-1, T^n, Z^j");
  auto* o_qn = rho->add_option("--qn", rho_qn, "Matrix Mbar mod N with det Mbar = r^2, as JSON");
  rho->add_option("--r", rho_r, "r for --qn");
  rho->add_flag("--approx", rho_approx, "Add floating point entries_approx");
  o_mat->excludes(o_word)->excludes(o_qn);
  o_word->excludes(o_qn);

  auto* hecke = app.add_subcommand("hecke", "Apply T(m^2)* to an expansion");
  std::string he_in, he_closed = "none", he_target;
  long he_m = 1, he_r = 0;
  bool he_check = false;
  hecke->add_option("input", he_in, "Expansion JSON")->required();
  hecke->add_option("-m", he_m, "m of T(m^2)*")->required()->check(CLI::PositiveNumber);
  hecke->add_option("--closed", he_closed, "Closed form instead of the coset engine: p2 or p")
      ->check(CLI::IsMember({"none", "p2", "p"}));
  hecke->add_option("--r", he_r, "r with r^2 = m mod N for --closed p");
  hecke->add_option("--target-prec", he_target, "Fail unless the output reaches this precision");
  hecke->add_flag("--check", he_check, "Recompute each coset action with a second decomposition");

  auto* theta = app.add_subcommand("theta", "Theta series of a positive definite even lattice");
  std::string th_in, th_prec, th_method = "auto";
  theta->add_option("input", th_in, "Gram JSON")->required();
  theta->add_option("--prec", th_prec, "Coefficients with n < prec")->required();
  theta->add_option("--method", th_method, "auto, enumerate or frame")->check(CLI::IsMember({"auto", "enumerate", "frame"}));

  auto* eigen = app.add_subcommand("eigen", "Hecke eigenvalues of an expansion");
  std::string ei_in;
  std::vector<long> ei_primes;
  eigen->add_option("input", ei_in, "Expansion JSON")->required();
  eigen->add_option("--primes", ei_primes, "Primes p for T(p^2)*")->required()->delimiter(',');

  auto* verify = app.add_subcommand("verify", "Run the invariant suite on the built-in corpus");
  VerifyOptions vo;
  bool serial = false;
  verify->add_option("--seed", vo.seed, "Random seed");
  verify->add_option("--samples", vo.samples, "Random elements per check")->check(CLI::PositiveNumber);
  verify->add_flag("--serial", serial, "Run forms one after another");

  for (CLI::App* sub : {discform, rho, hecke, theta, eigen, verify})
    sub->add_option("-o,--output", out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  try {
    if (*discform) {
      emit(to_json(discform_from_json(read_json_file(df_in))), out);
    } else if (*rho) {
      WeilRep w(discform_from_json(read_json_file(rho_form)));
      RepMatrix m;
      if (!rho_matrix.empty()) {
        MetaElem g{mat2_from_json(Json::parse(rho_matrix)), rho_sign};
        m = w.rho(g);
      } else if (!rho_word.empty()) {
        m = w.rho(parse_word(rho_word));
      } else if (!rho_qn.empty()) {
        m = w.rho_qn(mat2_from_json(Json::parse(rho_qn)), rho_r);
      } else {
        throw DomainError("rho needs one of --matrix, --word or --qn");
      }
      emit(to_json(m, rho_approx), out);
    } else if (*hecke) {
      FourierExpansion f = expansion_from_json(read_json_file(he_in));
      HeckeOptions opt;
      opt.check_cosets = he_check;
      if (!he_target.empty()) opt.target_prec = rat_option(he_target, "--target-prec");
      FourierExpansion g = f;
      if (he_closed == "none") {
        g = apply_T_general(f, he_m, opt);
      } else {
        const long d = he_closed == "p" ? he_m : he_m * he_m;
        if (opt.target_prec && f.prec() < *opt.target_prec * d)
          throw PrecisionError("closed form to precision " + format_rat(*opt.target_prec) + " needs input precision " +
                               format_rat(*opt.target_prec * d) + ", have " + format_rat(f.prec()));
        if (he_closed == "p")
          g = apply_T_p_even(f, he_m, he_r);
        else
          g = f.form().odd_signature() ? apply_T_p2_odd(f, he_m) : apply_T_p2_even(f, he_m);
      }
      emit(to_json(g), out);
    } else if (*theta) {
      ThetaMethod m = th_method == "enumerate" ? ThetaMethod::Enumerate
                      : th_method == "frame"   ? ThetaMethod::Frame
                                               : ThetaMethod::Auto;
      emit(to_json(theta_series(gram_from_json(read_json_file(th_in)), rat_option(th_prec, "--prec"), m)), out);
    } else if (*eigen) {
      FourierExpansion f = expansion_from_json(read_json_file(ei_in));
      Json rows = Json::array();
      for (long p : ei_primes) {
        if (p < 2 || !is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
        FourierExpansion b = apply_T_general(f, p);
        auto ev = eigenvalue(f.truncated(b.prec()), b);
        Json row{{"p", p}, {"eigenform", ev.has_value()}};
        if (ev) {
          row["lambda"] = to_json(*ev);
          if (auto r = ev->as_rational()) row["lambda_rational"] = format_rat(*r);
          // Local factor data of L(s, f) = sum lambda_m m^-s at m = p.
          row["euler_factor"] = Json{{"lambda", to_json(*ev)}, {"p", p}};
        }
        rows.push_back(row);
      }
      emit(Json{{"eigenvalues", rows}, {"prec", format_rat(f.prec())}, {"weight", format_rat(f.weight())}}, out);
    } else if (*verify) {
      vo.parallel = !serial;
      auto results = run_verify(builtin_corpus(), vo);
      for (const auto& r : results)
        std::cerr << (r.pass ? "PASS " : "FAIL ") << r.name << (r.form.empty() ? "" : " [" + r.form + "]")
                  << (r.detail.empty() ? "" : ": " + r.detail) << "\n";
      Json rep = report_json(results);
      emit(rep, out);
      return rep["ok"].get<bool>() ? kOk : kVerify;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const PrecisionError& e) {
    std::cerr << "precision: " << e.what() << "\n";
    return kPrecision;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomain;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kOk;
}
