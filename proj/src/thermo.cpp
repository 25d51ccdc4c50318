#include "ebench/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "ebench/error.hpp"
#include "ebench/parallel.hpp"

namespace ebench {

void CutHistogram::add(int cut, std::uint64_t times) {
  counts[cut] += times;
  total += times;
}

void CutHistogram::merge(const CutHistogram& other) {
  for (const auto& [cut, c] : other.counts) counts[cut] += c;
  total += other.total;
}

GibbsChain::GibbsChain(const Graph& g, double beta, std::uint64_t seed)
    : graph_(&g), rng_(make_rng(seed)), sides_(static_cast<std::size_t>(g.n())) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw ContractViolation("beta must be finite and >= 0");
  for (int& s : sides_) s = static_cast<int>(rng_() & 1u);
  for (const auto& [u, v] : g.edges()) cut_ += sides_[u] != sides_[v];
  offset_ = g.max_degree();
  accept_.resize(static_cast<std::size_t>(2 * offset_ + 1));
  for (int d = -offset_; d <= offset_; ++d) accept_[d + offset_] = d >= 0 ? 1.0 : std::exp(beta * d);
}

bool GibbsChain::step() {
  // Holding with probability 1/2 keeps the chain aperiodic; at beta = 0 every
  // flip is accepted and the parity of the flip count would otherwise be fixed.
  const std::uint64_t draw = uniform_below(rng_, 2 * static_cast<std::uint64_t>(sides_.size()));
  if (draw & 1u) return false;
  const int v = static_cast<int>(draw >> 1);
  int same = 0;
  for (int u : graph_->neighbors(v)) same += sides_[u] == sides_[v];
  const int delta = same - (graph_->degree(v) - same);
  if (delta < 0 && uniform01(rng_) >= accept_[delta + offset_]) return false;
  sides_[v] ^= 1;
  cut_ += delta;
  return true;
}

CutHistogram gibbs_sample(const Graph& g, const GibbsParams& params, int workers) {
  if (params.samples < 1) throw ContractViolation("gibbs_sample needs at least one sample");
  if (params.chains < 1) throw ContractViolation("gibbs_sample needs at least one chain");
  const std::int64_t n = g.n();
  const std::int64_t burn_in = params.burn_in < 0 ? 100 * n : params.burn_in;
  const std::int64_t thinning = params.thinning < 0 ? n : std::max<std::int64_t>(1, params.thinning);
  const auto chains = static_cast<std::uint64_t>(params.chains);

  std::vector<CutHistogram> parts(chains);
  parallel_for(chains, workers, [&](std::size_t c) {
    const std::uint64_t share = params.samples / chains + (c < params.samples % chains ? 1 : 0);
    GibbsChain chain(g, params.beta, mix_seed(params.seed, c));
    for (std::int64_t s = 0; s < burn_in; ++s) chain.step();
    for (std::uint64_t i = 0; i < share; ++i) {
      for (std::int64_t s = 0; s < thinning; ++s) chain.step();
      parts[c].add(chain.cut());
    }
  });
  CutHistogram hist;
  for (const auto& p : parts) hist.merge(p);
  return hist;
}

std::map<int, double> predicted_cut_distribution(const DensityOfStates& dos, double beta) {
  if (!std::isfinite(beta)) throw ContractViolation("beta must be finite");
  double top = -std::numeric_limits<double>::infinity();
  for (const auto& [k, c] : dos.counts)
    if (c > 0) top = std::max(top, std::log(static_cast<double>(c)) + beta * k);
  if (!std::isfinite(top)) throw ContractViolation("density of states is empty or all zero");
  std::map<int, double> p;
  double z = 0.0;
  for (const auto& [k, c] : dos.counts) {
    if (c == 0) continue;
    const double w = std::exp(std::log(static_cast<double>(c)) + beta * k - top);
    p[k] = w;
    z += w;
  }
  for (auto& [k, w] : p) w /= z;
  return p;
}

double chi2_reduced(const std::vector<double>& observed, const std::vector<double>& predicted,
                    const std::vector<double>& sigmas, int fitted_params) {
  if (observed.size() != predicted.size() || observed.size() != sigmas.size())
    throw ContractViolation("chi2_reduced: bins are not aligned");
  double sum = 0.0;
  int usable = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (!(sigmas[i] > 0.0)) continue;
    const double r = (observed[i] - predicted[i]) / sigmas[i];
    sum += r * r;
    ++usable;
  }
  const int dof = usable - fitted_params;
  if (dof <= 0) throw ContractViolation("chi2_reduced: no degrees of freedom left");
  return sum / dof;
}

namespace {

struct FitProblem {
  std::vector<int> ks;
  std::vector<double> obs;
  std::vector<double> sigma;
  double total = 0.0;
  const DensityOfStates* dos = nullptr;

  std::vector<double> predict(double beta) const {
    const auto p = predicted_cut_distribution(*dos, beta);
    std::vector<double> out(ks.size());
    for (std::size_t i = 0; i < ks.size(); ++i) {
      const auto it = p.find(ks[i]);
      out[i] = it == p.end() ? 0.0 : total * it->second;
    }
    return out;
  }

  double objective(double beta) const {
    const auto pred = predict(beta);
    double s = 0.0;
    for (std::size_t i = 0; i < ks.size(); ++i) {
      const double r = (obs[i] - pred[i]) / sigma[i];
      s += r * r;
    }
    return s;
  }
};

}  // namespace

GibbsFit fit_beta(const DensityOfStates& dos, const CutHistogram& observed, const FitOptions& options) {
  if (observed.total == 0 || observed.counts.empty()) throw InsufficientData("histogram is empty");
  if (!(options.beta_min < options.beta_max) || !(options.tolerance > 0.0))
    throw ContractViolation("fit_beta: invalid search interval");
  const double n = static_cast<double>(observed.total);
  const int lo = observed.counts.begin()->first;
  const int hi = observed.counts.rbegin()->first;

  std::map<int, std::uint64_t> bins;
  for (const auto& [k, c] : dos.counts)
    if (c > 0 && k >= lo && k <= hi) bins[k] = 0;
  for (const auto& [k, c] : observed.counts) bins[k] = c;

  FitProblem prob;
  prob.total = n;
  prob.dos = &dos;
  const double floor_sigma = std::sqrt(1.0 - 1.0 / n);
  for (const auto& [k, c] : bins) {
    const double f = static_cast<double>(c);
    const double s = c == 0 ? floor_sigma : std::sqrt(f * (1.0 - f / n));
    if (!(s > 0.0)) continue;
    prob.ks.push_back(k);
    prob.obs.push_back(f);
    prob.sigma.push_back(s);
  }
  if (prob.ks.size() < 3)
    throw InsufficientData("fit needs at least 3 bins with nonzero sigma, found " +
                           std::to_string(prob.ks.size()));

  // Coarse scan guards against local minima, golden section refines.
  constexpr int kGrid = 200;
  const double width = options.beta_max - options.beta_min;
  int best = 0;
  double best_value = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kGrid; ++i) {
    const double v = prob.objective(options.beta_min + width * i / kGrid);
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }
  double a = options.beta_min + width * std::max(0, best - 1) / kGrid;
  double b = options.beta_min + width * std::min(kGrid, best + 1) / kGrid;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
  double fc = prob.objective(c), fd = prob.objective(d);
  while (b - a > options.tolerance) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = prob.objective(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = prob.objective(d);
    }
  }
  double beta = 0.5 * (a + b);
  // The ends of the interval are candidates the interior bracket may miss.
  for (double edge : {options.beta_min, options.beta_max})
    if (std::abs(edge - beta) < width / kGrid && prob.objective(edge) < prob.objective(beta)) beta = edge;

  GibbsFit fit;
  fit.beta = beta;
  fit.at_boundary = beta - options.beta_min < 1e-3 || options.beta_max - beta < 1e-3;
  const auto pred = prob.predict(beta);
  fit.chi2_reduced = chi2_reduced(prob.obs, pred, prob.sigma, 1);
  fit.dof = static_cast<int>(prob.ks.size()) - 1;
  for (std::size_t i = 0; i < prob.ks.size(); ++i)
    fit.bins.push_back({prob.ks[i], prob.obs[i], pred[i], prob.sigma[i], (prob.obs[i] - pred[i]) / prob.sigma[i]});
  return fit;
}

std::string histogram_to_csv(const CutHistogram& hist) {
  std::string out = "k,frequency\n";
  for (const auto& [k, c] : hist.counts) out += std::to_string(k) + "," + std::to_string(c) + "\n";
  return out;
}

CutHistogram histogram_from_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  CutHistogram hist;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (lineno == 1) {
      if (line != "k,frequency") throw IoError("histogram CSV: expected header \"k,frequency\"");
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw IoError("histogram CSV line " + std::to_string(lineno));
    try {
      hist.add(std::stoi(line.substr(0, comma)), std::stoull(line.substr(comma + 1)));
    } catch (const std::exception&) {
      throw IoError("histogram CSV line " + std::to_string(lineno) + ": bad number");
    }
  }
  return hist;
}

std::string fit_to_json(const GibbsFit& fit) {
  nlohmann::ordered_json j;
  j["beta"] = fit.beta;
  j["chi2_reduced"] = fit.chi2_reduced;
  j["dof"] = fit.dof;
  j["at_boundary"] = fit.at_boundary;
  auto bins = nlohmann::ordered_json::array();
  for (const auto& b : fit.bins)
    bins.push_back({{"k", b.k}, {"observed", b.observed}, {"predicted", b.predicted}, {"sigma", b.sigma},
                    {"residual", b.residual}});
  j["bins"] = std::move(bins);
  return j.dump(2) + "\n";
}

}  // namespace ebench
