#include "zmd_cli/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "zmd/coalescent.hpp"
#include "zmd/density.hpp"
#include "zmd/dual.hpp"
#include "zmd/errors.hpp"
#include "zmd/graph.hpp"
#include "zmd/parallel.hpp"
#include "zmd/partition.hpp"
#include "zmd/symfunc.hpp"
#include "zmd/zmeasure.hpp"

namespace zmd::cli {

namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string part(const Partition& p) { return "\"" + p.to_string() + "\""; }

struct ParamFlags {
  std::string z = "0.3";
  std::string zprime = "0.7";
  std::string vartheta = "1";

  void attach(CLI::App* app) {
    app->add_option("--z", z, "z (real, fraction, or a+bi)")->capture_default_str();
    app->add_option("--zprime", zprime, "z'")->capture_default_str();
    app->add_option("--vartheta", vartheta, "Jack parameter (positive rational)")->capture_default_str();
  }
  ZParams make() const { return ZParams::make(parse_gaussian(z), parse_gaussian(zprime), parse_rational(vartheta)); }
};

Precision parse_precision(const std::string& s) {
  if (s == "double") return Precision::Double;
  if (s == "extended") return Precision::Extended;
  return Precision::Auto;
}

LevelOneConvention parse_convention(const std::string& s) {
  return s == "literal" ? LevelOneConvention::Literal : LevelOneConvention::Absorbing;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Z-measure diffusion toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string output;
  bool report = false;
  app.add_option("--output,-o", output, "write results to this file instead of stdout");
  app.add_flag("--report", report, "append invariant-check summary");

  std::function<int(std::ostream&)> action;

  // partitions
  int pn = 4;
  auto* partitions = app.add_subcommand("partitions", "enumerate partitions of n (reverse-lex)");
  partitions->add_option("--n", pn, "size")->required()->check(CLI::Range(0, 80));
  partitions->callback([&] {
    action = [&](std::ostream& os) {
      const auto all = enumerate_partitions(pn);
      os << "partition,length,conjugate\n";
      for (const auto& p : all) os << part(p) << ',' << p.length() << ',' << part(p.conjugate()) << '\n';
      if (report) os << "# count," << all.size() << ",recurrence," << partition_count(pn) << '\n';
      return kOk;
    };
  });

  // dims
  std::string dkind = "jack";
  std::string dvartheta = "1";
  int dmax = 6;
  auto* dims = app.add_subcommand("dims", "branching-graph dimensions by recursion");
  dims->add_option("--kind", dkind)->check(CLI::IsMember({"kingman", "jack"}))->capture_default_str();
  dims->add_option("--vartheta", dvartheta)->capture_default_str();
  dims->add_option("--max-n", dmax)->check(CLI::Range(0, 30))->capture_default_str();
  dims->callback([&] {
    action = [&](std::ostream& os) {
      const Rational th = parse_rational(dvartheta);
      const GraphKind kind = dkind == "kingman" ? GraphKind::kingman() : GraphKind::jack(th);
      BranchingGraph g(kind);
      os << "partition,dim\n";
      std::size_t match_h = 0, match_hh = 0, match_k = 0, total = 0;
      for (int n = 0; n <= dmax; ++n) {
        for (const auto& eta : enumerate_partitions(n)) {
          const Rational d = g.dim(eta);
          os << part(eta) << ',' << to_fraction_string(d) << '\n';
          ++total;
          const Rational nf = factorial(n);
          if (kind.is_kingman()) {
            Rational den{1};
            for (int x : eta.parts()) den *= factorial(x);
            match_k += (nf / den == d);
          } else {
            const HookProducts h = hook_products(eta, th);
            match_h += (nf / h.H == d);
            match_hh += (nf / (h.H * h.Hprime) == d);
          }
        }
      }
      if (report) {
        if (kind.is_kingman())
          os << "# closed form n!/prod(eta_i!) matches " << match_k << '/' << total << '\n';
        else
          os << "# closed form n!/H matches " << match_h << '/' << total << "; n!/(H*H') matches " << match_hh << '/' << total << '\n';
      }
      return kOk;
    };
  });

  // jack
  std::string jeta = "2,1";
  std::string jvartheta = "1";
  std::string jbasis = "monomial";
  std::string jnorm = "J";
  auto* jack = app.add_subcommand("jack", "exact Jack function expansion");
  jack->add_option("--eta", jeta)->required();
  jack->add_option("--vartheta", jvartheta)->capture_default_str();
  jack->add_option("--basis", jbasis)->check(CLI::IsMember({"monomial", "powersum", "schur"}))->capture_default_str();
  jack->add_option("--normalization", jnorm, "J (Pieri-pinned) or P (leading coefficient 1)")
      ->check(CLI::IsMember({"J", "P"}))
      ->capture_default_str();
  jack->callback([&] {
    action = [&](std::ostream& os) {
      const auto& alg = SymmetricAlgebra::shared();
      const Partition eta = Partition::parse(jeta);
      const Rational th = parse_rational(jvartheta);
      const Basis source = jnorm == "J" ? Basis::jack_paper(th) : Basis::jack_p(th);
      const Basis target = jbasis == "monomial" ? Basis::monomial() : jbasis == "powersum" ? Basis::power_sum() : Basis::schur();
      const GradedSymPoly f = alg.convert(GradedSymPoly::element(eta, source), target);
      for (auto it = f.coeffs().rbegin(); it != f.coeffs().rend(); ++it)
        os << to_fraction_string(it->second) << " * " << target.symbol() << '_' << '(' << it->first.to_string() << ")\n";
      if (report) {
        const PieriReport r = alg.pieri_report(th, std::max(eta.size(), 1));
        os << "# pieri levels<=" << r.max_level << " parent_checks=" << r.parent_checks
           << " inconsistencies=" << r.inconsistencies.size() << " scalar=" << to_fraction_string(r.scalars.at(eta)) << '\n';
        for (const auto& s : r.inconsistencies) os << "# " << s << '\n';
      }
      return kOk;
    };
  });

  // zmeasure-table
  ParamFlags zflags;
  int zn = 6;
  auto* ztable = app.add_subcommand("zmeasure-table", "Z-partition structure on one level");
  zflags.attach(ztable);
  ztable->add_option("--n", zn)->check(CLI::Range(0, 40))->capture_default_str();
  ztable->callback([&] {
    action = [&](std::ostream& os) {
      ZMeasure zm(zflags.make());
      auto t = zm.level(zn);
      os << "partition,raw,normalized,level_total,raw_decimal\n";
      for (std::size_t i = 0; i < t->partitions.size(); ++i)
        os << part(t->partitions[i]) << ',' << to_fraction_string(t->raw[i]) << ',' << to_fraction_string(t->normalized[i]) << ','
           << to_fraction_string(t->total) << ',' << num(t->raw_d[i]) << '\n';
      if (report) {
        os << "# case," << zm.params().case_name() << ",theta," << to_fraction_string(zm.params().theta) << '\n';
        for (int n = 1; n <= zn; ++n) os << "# level_total," << n << ',' << to_fraction_string(zm.level(n)->total) << '\n';
      }
      return kOk;
    };
  });

  // updown-sim
  ParamFlags uflags;
  int un = 6;
  std::uint64_t usteps = 100000, uburn = 1000, useed = 0;
  int uchains = 1;
  auto* updown = app.add_subcommand("updown-sim", "simulate the up-down chain and compare with M_n");
  uflags.attach(updown);
  updown->add_option("--n", un)->check(CLI::Range(1, 30))->capture_default_str();
  updown->add_option("--steps", usteps)->capture_default_str();
  updown->add_option("--burn-in", uburn)->capture_default_str();
  updown->add_option("--chains", uchains)->check(CLI::Range(1, 4096))->capture_default_str();
  updown->add_option("--seed", useed)->required();
  updown->callback([&] {
    action = [&](std::ostream& os) {
      ZMeasure zm(uflags.make());
      UpDownChain chain(zm, un);
      const EmpiricalLaw law = chain.simulate(uburn, usteps, useed, uchains);
      auto t = zm.level(un);
      std::map<Partition, double> exact;
      os << "partition,count,empirical,exact\n";
      for (std::size_t i = 0; i < law.states.size(); ++i) {
        exact[law.states[i]] = t->normalized_d[i];
        os << part(law.states[i]) << ',' << law.counts[i] << ',' << num(static_cast<double>(law.counts[i]) / law.total) << ','
           << num(t->normalized_d[i]) << '\n';
      }
      os << "# tv_distance," << num(total_variation(law.frequencies(), exact)) << '\n';
      return kOk;
    };
  });

  // coalescent
  double ctheta = 1.0, ct = 0.5;
  int cm = 8;
  bool climit = false;
  std::uint64_t cseed = 0;
  std::string cprec = "auto";
  auto* coal = app.add_subcommand("coalescent", "death-process coefficients d_mn or d_n");
  coal->add_option("--theta", ctheta)->check(CLI::PositiveNumber)->capture_default_str();
  coal->add_option("--t", ct)->check(CLI::NonNegativeNumber)->capture_default_str();
  coal->add_option("--m", cm)->check(CLI::Range(0, 60))->capture_default_str();
  coal->add_flag("--limit", climit, "m -> infinity family d_n(t)");
  coal->add_option("--seed", cseed, "accepted for uniformity; unused");
  coal->add_option("--precision", cprec)->check(CLI::IsMember({"double", "extended", "auto"}))->capture_default_str();
  coal->callback([&] {
    action = [&](std::ostream& os) {
      const Precision prec = parse_precision(cprec);
      if (climit) {
        if (ct <= 0) throw DomainError("--limit needs t > 0");
        const CoeffTable tab = d_n_table(ct, ctheta, prec);
        os << "n,d_n\n";
        for (std::size_t n = 0; n < tab.values.size(); ++n) os << n << ',' << num(tab.values[n]) << '\n';
        if (report) os << "# sum," << num(tab.sum()) << ",d1_tilde," << num(tab.values[0] + tab.values[1]) << '\n';
        return tab.unstable ? kUnstable : kOk;
      }
      CoeffTable tab = d_mn_table(ct, cm, ctheta, prec);
      const auto oracle = death_chain_expm_oracle(cm, ctheta, ct);
      attach_oracle(tab);
      os << "n,d_mn,oracle,abs_diff\n";
      for (int n = 0; n <= cm; ++n)
        os << n << ',' << num(tab.values[n]) << ',' << num(oracle[n]) << ',' << num(std::abs(tab.values[n] - oracle[n])) << '\n';
      if (report) os << "# sum," << num(tab.sum()) << ",max_oracle_diff," << num(tab.oracle_error) << '\n';
      return tab.unstable ? kUnstable : kOk;
    };
  });

  // dual-sim
  std::string dstart = "2,2";
  double dt = 0.5, dtheta = 1.0;
  std::uint64_t dpaths = 100000, dseed = 0;
  std::string dconv = "absorbing";
  auto* dsim = app.add_subcommand("dual-sim", "simulate the dual jump process and compare with its law");
  dsim->add_option("--start", dstart)->capture_default_str();
  dsim->add_option("--t", dt)->check(CLI::NonNegativeNumber)->capture_default_str();
  dsim->add_option("--theta", dtheta)->check(CLI::PositiveNumber)->capture_default_str();
  dsim->add_option("--paths", dpaths)->capture_default_str();
  dsim->add_option("--seed", dseed)->required();
  dsim->add_option("--convention", dconv, "analytic level-one convention")
      ->check(CLI::IsMember({"absorbing", "literal"}))
      ->capture_default_str();
  dsim->callback([&] {
    action = [&](std::ostream& os) {
      const Partition start = Partition::parse(dstart);
      DualSimulator sim(dtheta);
      const auto emp = sim.empirical_law(start, dt, dpaths, dseed);
      const auto ana = dual_law(start, dt, dtheta, parse_convention(dconv));
      os << "partition,empirical,analytic\n";
      for (const auto& [eta, a] : ana) {
        auto it = emp.find(eta);
        os << part(eta) << ',' << num(it == emp.end() ? 0.0 : it->second) << ',' << num(a) << '\n';
      }
      os << "# tv_distance," << num(total_variation(emp, ana)) << '\n';
      return kOk;
    };
  });

  // duality-check
  int qmax = 5;
  std::string qz = "1/3", qzp = "2/3";
  auto* dcheck = app.add_subcommand("duality-check", "exact generator-level duality identity at vartheta = 1");
  dcheck->add_option("--max-n", qmax)->check(CLI::Range(1, 8))->capture_default_str();
  dcheck->add_option("--z", qz)->capture_default_str();
  dcheck->add_option("--zprime", qzp)->capture_default_str();
  dcheck->callback([&] {
    action = [&](std::ostream& os) {
      const ZParams p = ZParams::make(parse_gaussian(qz), parse_gaussian(qzp), Rational(1));
      bool all = true;
      os << "eta,result,residual\n";
      for (int n = 1; n <= qmax; ++n) {
        for (const auto& eta : enumerate_partitions(n)) {
          const DualityResidual r = duality_residual(eta, p);
          all = all && r.zero();
          os << part(eta) << ',' << (r.zero() ? "pass" : "fail") << ",\"" << r.residual.to_string() << "\"\n";
        }
      }
      return all ? kOk : kValidation;
    };
  });

  // spectrum-check
  int sdeg = 5;
  std::string stheta = "1", svartheta = "1", szsum = "0";
  auto* spectrum = app.add_subcommand("spectrum-check", "eigenvalues of the generator on weighted degree <= deg");
  spectrum->add_option("--deg", sdeg)->check(CLI::Range(0, 7))->capture_default_str();
  spectrum->add_option("--theta", stheta)->capture_default_str();
  spectrum->add_option("--vartheta", svartheta)->capture_default_str();
  spectrum->add_option("--zsum", szsum, "z + z'")->capture_default_str();
  spectrum->callback([&] {
    action = [&](std::ostream& os) {
      const GeneratorParams gp{parse_rational(svartheta), parse_rational(szsum), parse_rational(stheta)};
      if (gp.theta <= 0) throw ParameterError("theta must be positive");
      const SpectrumReport r = spectrum_check(sdeg, gp);
      os << "index,eigen_re,eigen_im,expected\n";
      for (std::size_t i = 0; i < r.eigen_real.size(); ++i)
        os << i << ',' << num(r.eigen_real[i]) << ',' << num(r.eigen_imag[i]) << ',' << num(r.expected[i]) << '\n';
      os << "# result," << (r.ok ? "pass" : "fail") << ",max_deviation," << num(r.max_deviation) << '\n';
      for (const auto& [m, c] : r.expected_multiplicity) {
        auto it = r.found_multiplicity.find(m);
        os << "# multiplicity,m=" << m << ",expected," << c << ",found," << (it == r.found_multiplicity.end() ? 0 : it->second) << '\n';
      }
      for (const auto& s : r.problems) os << "# " << s << '\n';
      if (report) {
        os << "# report,dimension," << r.dimension << ",theta," << num(r.theta) << ",max_degree," << r.max_degree << '\n';
        for (const auto& [m, c] : r.expected_multiplicity)
          os << "# report,lambda_" << m << ',' << num(m == 0 ? 0.0 : -lambda(m, r.theta)) << '\n';
      }
      return r.ok ? kOk : kValidation;
    };
  });

  // density
  ParamFlags qflags;
  double qt = 0.8;
  std::string qsigma = "a=0.5,0.3;b=0.1", qomega = "a=0.7;b=0.2";
  int qtrunc = 8;
  auto* dens = app.add_subcommand("density", "transition density by both series (JSON)");
  qflags.attach(dens);
  dens->add_option("--t", qt)->check(CLI::PositiveNumber)->capture_default_str();
  dens->add_option("--sigma", qsigma)->capture_default_str();
  dens->add_option("--omega", qomega)->capture_default_str();
  dens->add_option("--trunc", qtrunc)->check(CLI::Range(2, 12))->capture_default_str();
  dens->callback([&] {
    action = [&](std::ostream& os) {
      ZMeasure zm(qflags.make());
      DensityModel model(zm);
      const DensityEval e = model.evaluate(qt, ThomaPoint::parse(qsigma), ThomaPoint::parse(qomega), qtrunc);
      nlohmann::ordered_json j;
      j["t"] = e.t;
      j["sigma"] = e.sigma.to_string();
      j["omega"] = e.omega.to_string();
      j["theta"] = zm.params().theta_d();
      j["truncation"] = e.truncation;
      j["value_mixture"] = e.value_mixture;
      j["value_spectral"] = e.value_spectral;
      j["tail_estimate"] = e.tail_estimate;
      j["tail_spectral"] = e.tail_spectral;
      j["tail_mixture"] = e.tail_mixture;
      j["rounding"] = e.rounding;
      j["unstable"] = e.unstable;
      if (report) {
        j["report"]["kernels"] = e.kernels;
        j["report"]["g"] = e.g;
        j["report"]["g_growth"] = {{"c", e.growth_c}, {"d", e.growth_d}};
        j["report"]["abs_difference"] = std::abs(e.value_mixture - e.value_spectral);
      }
      os << j.dump(2) << '\n';
      return e.unstable ? kUnstable : kOk;
    };
  });

  // ergodic
  double etheta = 1.0, etmin = 0.1, etmax = 3.0;
  int esteps = 30;
  auto* ergo = app.add_subcommand("ergodic", "closed-form tail bound against the coefficient tail");
  ergo->add_option("--theta", etheta)->check(CLI::PositiveNumber)->capture_default_str();
  ergo->add_option("--tmin", etmin)->check(CLI::PositiveNumber)->capture_default_str();
  ergo->add_option("--tmax", etmax)->check(CLI::PositiveNumber)->capture_default_str();
  ergo->add_option("--steps", esteps)->check(CLI::Range(1, 10000))->capture_default_str();
  ergo->callback([&] {
    action = [&](std::ostream& os) {
      if (etmax < etmin) throw ParameterError("--tmax must be >= --tmin");
      os << "t,bound,proxy,ok\n";
      int violations = 0;
      double worst = 0.0;
      for (int i = 0; i <= esteps; ++i) {
        const double t = etmin + (etmax - etmin) * i / esteps;
        const ErgodicBound b = ergodic_bound(t, etheta);
        const bool ok = b.proxy <= b.bound + 1e-10;
        if (!ok) ++violations;
        worst = std::max(worst, b.proxy - b.bound);
        os << num(t) << ',' << num(b.bound) << ',' << num(b.proxy) << ',' << (ok ? "true" : "false") << '\n';
      }
      if (report)
        os << "# report,points," << esteps + 1 << ",violations," << violations << ",max_excess," << num(worst) << '\n';
      return kOk;
    };
  });

  // probe
  ParamFlags pflags;
  std::string pzeta = "2";
  std::vector<int> pms{10, 20, 30};
  auto* probe = app.add_subcommand("probe", "sampling-formula probe at vartheta = 1");
  pflags.attach(probe);
  probe->add_option("--zeta", pzeta)->capture_default_str();
  probe->add_option("--m", pms, "levels")->delimiter(',')->check(CLI::Range(1, 30));
  probe->callback([&] {
    action = [&](std::ostream& os) {
      ZMeasure zm(pflags.make());
      const Partition zeta = Partition::parse(pzeta);
      if (zeta.size() > 3) throw CapacityError("probe supports |zeta| <= 3");
      os << "m,approx,target,gap\n";
      for (int m : pms) {
        const ProbeResult r = weak_convergence_probe(zeta, m, zm);
        os << m << ',' << num(r.approx) << ',' << num(r.target) << ',' << num(r.gap) << '\n';
      }
      if (report)
        for (int m : pms) {
          double level_sum = 0.0;
          for (const auto& other : enumerate_partitions(zeta.size())) level_sum += weak_convergence_probe(other, m, zm).approx;
          os << "# report,level_sum,m=" << m << ',' << num(level_sum) << '\n';
        }
      return kOk;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kValidation;
  }

  std::ostringstream buffer;
  int code = kOk;
  try {
    code = action(buffer);
  } catch (const std::invalid_argument& e) {
    err << "invalid parameter: " << e.what() << '\n';
    return kValidation;
  } catch (const std::domain_error& e) {
    err << "domain error: " << e.what() << '\n';
    return kValidation;
  } catch (const std::length_error& e) {
    err << "capacity: " << e.what() << '\n';
    return kValidation;
  } catch (const std::logic_error& e) {
    err << "consistency failure: " << e.what() << '\n';
    return kValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  }
  if (code == kUnstable) err << "warning: numerical instability flagged\n";
  if (output.empty()) {
    out << buffer.str();
  } else {
    std::ofstream f(output);
    if (!f) {
      err << "cannot open " << output << '\n';
      return kValidation;
    }
    f << buffer.str();
  }
  return code;
}

}  // namespace zmd::cli
