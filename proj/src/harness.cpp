// Copyright 2026 The dcube Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dcube/harness.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>

#include "dcube/flo.hpp"
#include "dcube/models.hpp"
#include "dcube/stochastic.hpp"

namespace dcube {

void TimeSeries::validate() const {
  if (values.size() != times.size() || std_errors.size() != times.size())
    throw ValidationError("time series fields must have equal lengths");
  for (double e : std_errors)
    if (!(e >= 0.0)) throw ValidationError("standard errors must be >= 0");
}

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<int> requested_sites(const ExperimentConfig& cfg) {
  if (!cfg.density_sites.empty()) return cfg.density_sites;
  std::vector<int> all(static_cast<std::size_t>(cfg.model.sites));
  for (int i = 0; i < cfg.model.sites; ++i) all[i] = i;
  return all;
}

ComplexVector initial_fermion_vector(const ExperimentConfig& cfg) {
  if (cfg.initial == "ground") return ground_state(cfg.model).vector;
  return fock_vector(cfg.model, fermion_layout(cfg.model));
}

// Fermion state times the boson vacuum; bosons are the trailing factors.
ComplexVector extend_with_vacuum(const ComplexVector& psi, std::size_t total_dim) {
  const auto n = static_cast<Eigen::Index>(total_dim);
  const Eigen::Index stride = n / psi.size();
  ComplexVector out = ComplexVector::Zero(n);
  for (Eigen::Index i = 0; i < psi.size(); ++i) out(i * stride) = psi(i);
  return out;
}

std::vector<std::vector<int>> site_mode_lists(const ModelConfig& m) {
  std::vector<std::vector<int>> out;
  for (int s = 0; s < m.sites; ++s) {
    std::vector<int> modes{m.mode_index(s, 0)};
    if (m.spinful) modes.push_back(m.mode_index(s, 1));
    out.push_back(std::move(modes));
  }
  return out;
}

// Draws gamma bitstrings from the configured sampler.
class GammaSource {
 public:
  GammaSource(const ExperimentConfig& cfg, const IqpSpec& spec) {
    if (cfg.gamma_sampler == "exact") {
      exact_ = std::make_unique<IqpExactSampler>(spec);
    } else {
      CircuitOptions opt;
      opt.n_rho = cfg.n_rho;
      opt.order = cfg.order;
      opt.n_eta = cfg.n_eta;
      circuit_ = std::make_unique<IqpCircuitSampler>(spec, opt);
    }
  }
  GammaBitstring sample(Rng& rng) const { return exact_ ? exact_->sample(rng) : circuit_->sample(rng); }

 private:
  std::unique_ptr<IqpExactSampler> exact_;
  std::unique_ptr<IqpCircuitSampler> circuit_;
};

void require_dcube_model(const ExperimentConfig& cfg) {
  if (cfg.lindbladian != "eph")
    throw ValidationError("method 'dcube' needs the electron-phonon Lindbladian; the fermion dephasing "
                          "model has no bosonic partner to decouple (use exact or stochastic)");
}

// Dense trajectory unitary on the fermion layout for U != 0.
struct DenseTrajectory {
  ComplexMatrix step;
  std::vector<ComplexMatrix> signs;

  ComplexVector apply(const GammaBitstring& g, ComplexVector psi) const {
    for (int r = 0; r < g.steps; ++r) {
      for (int k = 0; k < g.jumps; ++k)
        if (g.at(r, k)) psi = signs[k] * psi;
      psi = step * psi;
    }
    return psi;
  }
};

Complex complex_mean(const std::vector<Complex>& v, double& std_error) {
  std::vector<double> re(v.size()), im(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    re[i] = v[i].real();
    im[i] = v[i].imag();
  }
  const ChannelEstimate er = make_estimate(re);
  const ChannelEstimate ei = make_estimate(im);
  std_error = std::hypot(er.std_error, ei.std_error);
  return {er.mean, ei.mean};
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

double parse_double(const std::string& s) {
  std::size_t pos = 0;
  const double x = std::stod(s, &pos);
  if (pos != s.size()) throw ValidationError("malformed number in CSV: '" + s + "'");
  return x;
}

std::vector<std::vector<std::string>> read_csv_rows(std::istream& in, const std::string& header) {
  std::string line;
  if (!std::getline(in, line) || line != header)
    throw ValidationError("CSV header mismatch, expected '" + header + "'");
  const std::size_t cols = split_csv(header).size();
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = split_csv(line);
    if (cells.size() != cols) throw ValidationError("CSV row has the wrong number of columns");
    rows.push_back(std::move(cells));
  }
  return rows;
}

}  // namespace

LindbladSpec build_model_lindblad(const ExperimentConfig& cfg) {
  if (cfg.lindbladian == "fermion") return build_fermion_dephasing(cfg.model);
  return build_eph_lindblad(cfg.model);
}

IqpSpec iqp_spec_for(const ExperimentConfig& cfg, double t) {
  IqpSpec spec;
  spec.L = cfg.model.sites;
  spec.N = cfg.trotter_n;
  spec.g = cfg.model.g;
  spec.omega = cfg.model.omega;
  spec.t = t;
  spec.validate();
  return spec;
}

DensityResult run_density_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto times = cfg.time_grid();
  const auto sites = requested_sites(cfg);
  const std::size_t nt = times.size();
  const std::size_t ns = sites.size();

  DensityResult result;
  result.sites = sites;
  result.series.resize(ns);
  for (auto& s : result.series) {
    s.times = times;
    s.values.assign(nt, Complex(0.0));
    s.std_errors.assign(nt, 0.0);
  }

  const ComplexVector psi_f = initial_fermion_vector(cfg);

  if (cfg.method == "exact" || cfg.method == "stochastic") {
    const LindbladSpec spec = build_model_lindblad(cfg);
    const SpaceLayout& layout = spec.layout();
    const ComplexVector psi = extend_with_vacuum(psi_f, layout.total_dim());
    const ComplexMatrix rho0 = psi * psi.adjoint();
    std::vector<ComplexMatrix> obs;
    for (int s : sites) obs.push_back(site_density(cfg.model, layout, s));

    if (cfg.method == "exact") {
      const auto rhos = evolve_operator_series(spec, rho0, times);
      for (std::size_t i = 0; i < nt; ++i)
        for (std::size_t j = 0; j < ns; ++j) result.series[j].values[i] = (obs[j] * rhos[i]).trace().real();
    } else {
      Alg1Options opt;
      opt.steps = cfg.trotter_n;
      opt.samples = cfg.samples;
      opt.seed = cfg.seed;
      opt.threads = cfg.threads;
      const auto est = run_alg1_series(spec, rho0, obs, times, opt);
      for (std::size_t i = 0; i < nt; ++i)
        for (std::size_t j = 0; j < ns; ++j) {
          result.series[j].values[i] = est[i][j].mean;
          result.series[j].std_errors[i] = est[i][j].std_error;
        }
    }
    return result;
  }

  if (cfg.method != "dcube") throw ValidationError("method '" + cfg.method + "' does not produce densities");
  require_dcube_model(cfg);

  const ModelConfig& m = cfg.model;
  const bool free = m.U == 0.0;
  const auto site_modes = site_mode_lists(m);
  const SpaceLayout fl = fermion_layout(m);
  ComplexMatrix c0, h;
  std::vector<ComplexMatrix> dens;
  DenseTrajectory dense;
  HermitianExp h_exp;
  if (free) {
    h = hopping_matrix(m);
    h_exp = HermitianExp(h);
    c0 = cfg.initial == "ground" ? correlation_matrix(psi_f * psi_f.adjoint(), fl)
                                 : fock_correlation(m.modes(), m.occupied_modes);
  } else {
    h_exp = HermitianExp(fermion_hamiltonian(m, fl));
    for (int s = 0; s < m.sites; ++s) dense.signs.push_back(site_sign(m, fl, s));
    for (int s : sites) dens.push_back(site_density(m, fl, s));
  }

  for (std::size_t i = 0; i < nt; ++i) {
    const IqpSpec spec = iqp_spec_for(cfg, times[i]);
    const GammaSource source(cfg, spec);
    const ComplexMatrix step = h_exp(-times[i] / cfg.trotter_n);
    if (!free) dense.step = step;
    std::vector<std::vector<double>> values(ns, std::vector<double>(cfg.samples));
    parallel_for(cfg.samples, cfg.threads, [&](std::size_t p) {
      Rng rng = stream(cfg.seed, i, p);
      const GammaBitstring g = source.sample(rng);
      if (free) {
        const RealVector n = trajectory_densities(trajectory_transfer(step, g, site_modes), c0);
        for (std::size_t j = 0; j < ns; ++j) {
          double acc = 0.0;
          for (int mode : site_modes[sites[j]]) acc += n(mode);
          values[j][p] = acc;
        }
      } else {
        const ComplexVector psi = dense.apply(g, psi_f);
        for (std::size_t j = 0; j < ns; ++j) values[j][p] = psi.dot(dens[j] * psi).real();
      }
    });
    for (std::size_t j = 0; j < ns; ++j) {
      const ChannelEstimate e = make_estimate(values[j]);
      result.series[j].values[i] = e.mean;
      result.series[j].std_errors[i] = e.std_error;
    }
  }
  return result;
}

TimeSeries run_gf_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const ModelConfig& m = cfg.model;
  const auto times = cfg.time_grid();
  const std::size_t nt = times.size();
  const int mode = m.mode_index(cfg.gf_site, cfg.gf_spin);
  const GroundState gs = ground_state(m);

  TimeSeries ts;
  ts.times = times;
  ts.values.assign(nt, Complex(0.0));
  ts.std_errors.assign(nt, 0.0);

  if (cfg.method == "exact" || cfg.method == "stochastic") {
    const LindbladSpec spec = build_model_lindblad(cfg);
    const SpaceLayout& layout = spec.layout();
    const ComplexMatrix c = jordan_wigner(static_cast<std::size_t>(mode), layout).annihilate;
    const ComplexMatrix cd = c.adjoint();
    const ComplexVector v = extend_with_vacuum(gs.vector, layout.total_dim());

    if (cfg.method == "exact") {
      const ComplexMatrix rho0 = v * v.adjoint();
      const ComplexMatrix y0 = c * rho0 + rho0 * c;
      const auto ys = evolve_operator_series(spec, y0, times);
      for (std::size_t i = 0; i < nt; ++i) ts.values[i] = -kI * (cd * ys[i]).trace();
      return ts;
    }

    const Alg1Generators gens(spec);
    const ComplexVector cv = c * v;
    const ComplexVector cdv = cd * v;
    for (std::size_t i = 0; i < nt; ++i) {
      const Alg1Circuit circuit(gens, times[i], cfg.trotter_n);
      std::vector<Complex> values(cfg.samples);
      parallel_for(cfg.samples, cfg.threads, [&](std::size_t p) {
        Rng rng = stream(cfg.seed, i, p);
        const SignVector s = sample_signs(rng, circuit.steps(), circuit.jumps());
        const ComplexVector a = circuit.apply(s, v);
        const ComplexVector b = circuit.apply(s, cv);
        const ComplexVector e = circuit.apply(s, cdv);
        values[p] = a.dot(cd * b) + e.dot(cd * a);
      });
      double se = 0.0;
      ts.values[i] = -kI * complex_mean(values, se);
      ts.std_errors[i] = se;
    }
    return ts;
  }

  if (cfg.method != "dcube") throw ValidationError("method '" + cfg.method + "' does not produce Green's functions");
  require_dcube_model(cfg);

  const bool free = m.U == 0.0;
  const auto site_modes = site_mode_lists(m);
  const SpaceLayout fl = fermion_layout(m);
  DenseTrajectory dense;
  ComplexMatrix c, cd;
  ComplexVector cv, cdv;
  HermitianExp h_exp;
  if (free) {
    h_exp = HermitianExp(hopping_matrix(m));
  } else {
    h_exp = HermitianExp(fermion_hamiltonian(m, fl));
    for (int s = 0; s < m.sites; ++s) dense.signs.push_back(site_sign(m, fl, s));
    c = jordan_wigner(static_cast<std::size_t>(mode), fl).annihilate;
    cd = c.adjoint();
    cv = c * gs.vector;
    cdv = cd * gs.vector;
  }

  for (std::size_t i = 0; i < nt; ++i) {
    const IqpSpec spec = iqp_spec_for(cfg, times[i]);
    const GammaSource source(cfg, spec);
    const ComplexMatrix step = h_exp(-times[i] / cfg.trotter_n);
    if (!free) dense.step = step;
    std::vector<Complex> values(cfg.samples);
    parallel_for(cfg.samples, cfg.threads, [&](std::size_t p) {
      Rng rng = stream(cfg.seed, i, p);
      const GammaBitstring g = source.sample(rng);
      if (free) {
        values[p] = gf_anticommutator(trajectory_transfer(step, g, site_modes), mode);
      } else {
        const ComplexVector a = dense.apply(g, gs.vector);
        const ComplexVector b = dense.apply(g, cv);
        const ComplexVector e = dense.apply(g, cdv);
        values[p] = a.dot(cd * b) + e.dot(cd * a);
      }
    });
    double se = 0.0;
    ts.values[i] = -kI * complex_mean(values, se);
    ts.std_errors[i] = se;
  }
  return ts;
}

Spectrum ldos(const TimeSeries& ts, Window window) {
  ts.validate();
  const std::size_t m = ts.size();
  if (m < 2) throw ValidationError("LDOS needs at least two time points");
  const double dt = (ts.times.back() - ts.times.front()) / static_cast<double>(m - 1);
  if (!(dt > 0.0)) throw ValidationError("LDOS needs increasing times");
  for (std::size_t p = 0; p < m; ++p) {
    const double expected = ts.times.front() + dt * static_cast<double>(p);
    if (std::abs(ts.times[p] - expected) > 1e-9 * std::max(1.0, std::abs(expected)))
      throw ValidationError("LDOS needs a uniform time grid (point " + std::to_string(p) + " is off)");
  }

  std::vector<Complex> x(m);
  for (std::size_t p = 0; p < m; ++p) {
    double w = p == 0 ? 0.5 : 1.0;
    if (window == Window::kHann) w *= 0.5 * (1.0 + std::cos(kPi * static_cast<double>(p) / static_cast<double>(m - 1)));
    x[p] = w * ts.values[p];
  }

  Spectrum s;
  const auto mi = static_cast<long long>(m);
  const long long q0 = -(mi / 2);
  for (long long q = q0; q < q0 + mi; ++q) {
    const double omega = 2.0 * kPi * static_cast<double>(q) / (static_cast<double>(m) * dt);
    Complex acc(0.0);
    for (std::size_t p = 0; p < m; ++p) {
      // Reduce q * p mod M first so the phase stays exact for long signals.
      const long long r = ((q * static_cast<long long>(p)) % mi + mi) % mi;
      const double phase = -2.0 * kPi * static_cast<double>(r) / static_cast<double>(m);
      acc += x[p] * Complex(std::cos(phase), std::sin(phase));
    }
    acc *= dt;
    s.omega.push_back(omega);
    s.transform.push_back(acc);
    s.ldos.push_back(-acc.imag() / kPi);
  }
  return s;
}

double ldos_sum_rule(const Spectrum& s) {
  if (s.omega.size() < 2) throw ValidationError("spectrum too short");
  const double dw = s.omega[1] - s.omega[0];
  double acc = 0.0;
  for (double v : s.ldos) acc += v;
  return acc * dw;
}

std::vector<Peak> find_peaks(const Spectrum& s, double rel_height) {
  std::vector<Peak> out;
  if (s.ldos.size() < 3) return out;
  const double top = *std::max_element(s.ldos.begin(), s.ldos.end());
  if (!(top > 0.0)) return out;
  for (std::size_t i = 1; i + 1 < s.ldos.size(); ++i) {
    const double v = s.ldos[i];
    if (v > s.ldos[i - 1] && v >= s.ldos[i + 1] && v >= rel_height * top) out.push_back({i, s.omega[i], v});
  }
  return out;
}

double peak_fwhm(const Spectrum& s, std::size_t index) {
  if (index >= s.ldos.size()) throw ValidationError("peak index out of range");
  const double half = 0.5 * s.ldos[index];
  std::size_t l = index;
  while (l > 0 && s.ldos[l - 1] >= half) --l;
  if (l == 0) throw NumericalError("left half-maximum crossing falls off the frequency grid");
  std::size_t r = index;
  while (r + 1 < s.ldos.size() && s.ldos[r + 1] >= half) ++r;
  if (r + 1 == s.ldos.size()) throw NumericalError("right half-maximum crossing falls off the frequency grid");
  auto cross = [&](std::size_t a, std::size_t b) {
    const double fa = s.ldos[a] - half;
    const double fb = s.ldos[b] - half;
    return s.omega[a] + (s.omega[b] - s.omega[a]) * fa / (fa - fb);
  };
  return cross(r, r + 1) - cross(l - 1, l);
}

std::vector<Pole> lehmann_poles(const ModelConfig& model, int site, int spin, double min_weight) {
  const SpaceLayout layout = fermion_layout(model);
  const GroundState gs = ground_state(model);
  const ComplexMatrix h = fermion_hamiltonian(model, layout);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  if (es.info() != Eigen::Success) throw NumericalError("Hamiltonian diagonalization failed");
  const FermionPair c = jordan_wigner(static_cast<std::size_t>(model.mode_index(site, spin)), layout);
  const ComplexVector add = es.eigenvectors().adjoint() * (c.create * gs.vector);
  const ComplexVector rem = es.eigenvectors().adjoint() * (c.annihilate * gs.vector);

  std::vector<Pole> raw;
  for (Eigen::Index n = 0; n < add.size(); ++n) {
    const double e = es.eigenvalues()(n);
    if (std::norm(add(n)) > min_weight) raw.push_back({e - gs.energy, std::norm(add(n))});
    if (std::norm(rem(n)) > min_weight) raw.push_back({gs.energy - e, std::norm(rem(n))});
  }
  std::sort(raw.begin(), raw.end(), [](const Pole& a, const Pole& b) { return a.omega < b.omega; });
  std::vector<Pole> out;
  for (const Pole& p : raw) {
    if (!out.empty() && std::abs(out.back().omega - p.omega) < 1e-9) {
      out.back().weight += p.weight;
    } else {
      out.push_back(p);
    }
  }
  return out;
}

std::vector<TruncationRow> boson_truncation_sweep(const ExperimentConfig& cfg, const std::vector<int>& n_b_list) {
  if (n_b_list.size() < 2) throw ValidationError("truncation sweep needs at least two N_b values");
  std::vector<DensityResult> runs;
  for (int nb : n_b_list) {
    ExperimentConfig c = cfg;
    c.method = "exact";
    c.model.n_b = nb;
    runs.push_back(run_density_experiment(c));
  }
  std::vector<TruncationRow> rows;
  for (std::size_t k = 0; k + 1 < runs.size(); ++k) {
    double dev = 0.0;
    for (std::size_t j = 0; j < runs[k].series.size(); ++j)
      for (std::size_t i = 0; i < runs[k].series[j].size(); ++i)
        dev = std::max(dev, std::abs(runs[k].series[j].values[i] - runs[k + 1].series[j].values[i]));
    rows.push_back({n_b_list[k], n_b_list[k + 1], dev});
  }
  return rows;
}

std::vector<GammaRow> run_gamma_distribution(const ExperimentConfig& cfg) {
  cfg.validate();
  const IqpSpec spec = iqp_spec_for(cfg, cfg.time);
  const GammaDistribution exact = gamma_exact(spec);
  const GammaSource source(cfg, spec);
  std::vector<std::uint64_t> drawn(cfg.samples);
  parallel_for(cfg.samples, cfg.threads, [&](std::size_t p) {
    Rng rng = stream(cfg.seed, 0, p);
    drawn[p] = source.sample(rng).index();
  });
  std::vector<std::size_t> counts(exact.probs.size(), 0);
  for (std::uint64_t idx : drawn) ++counts.at(idx);

  const double m = static_cast<double>(cfg.samples);
  std::vector<GammaRow> rows;
  rows.reserve(exact.probs.size());
  for (std::size_t idx = 0; idx < exact.probs.size(); ++idx) {
    GammaRow r;
    r.bitstring = GammaBitstring::from_index(idx, spec.N, spec.L).to_string();
    r.exact_prob = exact.probs[idx];
    r.sampled_freq = static_cast<double>(counts[idx]) / m;
    r.sampling_err = std::sqrt(r.sampled_freq * (1.0 - r.sampled_freq) / m);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_density_csv(std::ostream& out, const DensityResult& r) {
  out << "time,site,density,std_error\n";
  if (r.series.empty()) return;
  for (std::size_t i = 0; i < r.series.front().size(); ++i)
    for (std::size_t j = 0; j < r.series.size(); ++j)
      out << format_double(r.series[j].times[i]) << ',' << r.sites[j] << ','
          << format_double(r.series[j].values[i].real()) << ',' << format_double(r.series[j].std_errors[i]) << '\n';
}

void write_gf_csv(std::ostream& out, const TimeSeries& ts) {
  out << "time,re,im,std_error\n";
  for (std::size_t i = 0; i < ts.size(); ++i)
    out << format_double(ts.times[i]) << ',' << format_double(ts.values[i].real()) << ','
        << format_double(ts.values[i].imag()) << ',' << format_double(ts.std_errors[i]) << '\n';
}

void write_ldos_csv(std::ostream& out, const Spectrum& s) {
  out << "omega,ldos\n";
  for (std::size_t i = 0; i < s.omega.size(); ++i)
    out << format_double(s.omega[i]) << ',' << format_double(s.ldos[i]) << '\n';
}

void write_truncation_csv(std::ostream& out, const std::vector<TruncationRow>& rows) {
  out << "n_b_from,n_b_to,max_deviation\n";
  for (const auto& r : rows) out << r.n_b_from << ',' << r.n_b_to << ',' << format_double(r.max_deviation) << '\n';
}

void write_gamma_csv(std::ostream& out, const std::vector<GammaRow>& rows) {
  out << "bitstring,exact_prob,sampled_freq,sampling_err\n";
  for (const auto& r : rows)
    out << r.bitstring << ',' << format_double(r.exact_prob) << ',' << format_double(r.sampled_freq) << ','
        << format_double(r.sampling_err) << '\n';
}

DensityResult read_density_csv(std::istream& in) {
  DensityResult r;
  std::map<int, std::size_t> slot;
  for (const auto& row : read_csv_rows(in, "time,site,density,std_error")) {
    const int site = std::stoi(row[1]);
    auto it = slot.find(site);
    if (it == slot.end()) {
      it = slot.emplace(site, r.sites.size()).first;
      r.sites.push_back(site);
      r.series.emplace_back();
    }
    TimeSeries& ts = r.series[it->second];
    ts.times.push_back(parse_double(row[0]));
    ts.values.emplace_back(parse_double(row[2]), 0.0);
    ts.std_errors.push_back(parse_double(row[3]));
  }
  return r;
}

TimeSeries read_gf_csv(std::istream& in) {
  TimeSeries ts;
  for (const auto& row : read_csv_rows(in, "time,re,im,std_error")) {
    ts.times.push_back(parse_double(row[0]));
    ts.values.emplace_back(parse_double(row[1]), parse_double(row[2]));
    ts.std_errors.push_back(parse_double(row[3]));
  }
  return ts;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw Error("failed writing '" + path + "'");
}

}  // namespace dcube
