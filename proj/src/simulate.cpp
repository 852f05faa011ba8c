#include "reliab/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

#include "reliab/edgeworth.hpp"
#include "reliab/error.hpp"
#include "reliab/inference.hpp"
#include "reliab/stdnorm.hpp"

namespace reliab {

namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Feeds n draws of `spec` into `sink`. Distribution objects are created per
// call so no cached state leaks between substreams.
template <class Sink>
void draw(const DistributionSpec& spec, std::uint64_t n, Engine& eng, Sink&& sink) {
  std::visit(
      Overloaded{
          [&](const NormalFamily& d) {
            std::normal_distribution<double> dist(d.mu, d.sigma);
            for (std::uint64_t i = 0; i < n; ++i) sink(dist(eng));
          },
          [&](const LognormalFamily& d) {
            std::lognormal_distribution<double> dist(d.mu, d.sigma);
            for (std::uint64_t i = 0; i < n; ++i) sink(dist(eng));
          },
          [&](const GammaFamily& d) {
            std::gamma_distribution<double> dist(d.shape, d.scale);
            for (std::uint64_t i = 0; i < n; ++i) sink(dist(eng));
          },
          [&](const ZeroInflatedLognormalFamily& d) {
            std::uniform_real_distribution<double> unit(0.0, 1.0);
            std::lognormal_distribution<double> dist(d.mu, d.sigma);
            for (std::uint64_t i = 0; i < n; ++i) {
              sink(unit(eng) < d.zero_prob ? 0.0 : dist(eng));
            }
          },
          [&](const EmpiricalFamily& d) {
            const auto& v = *d.values;
            std::uniform_int_distribution<std::size_t> pick(0, v.size() - 1);
            for (std::uint64_t i = 0; i < n; ++i) sink(v[pick(eng)]);
          },
      },
      spec);
}

// Runs fn(begin, end, chunk) over contiguous chunks of [0, count).
template <class Fn>
void parallel_chunks(std::uint64_t count, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const std::uint64_t chunks =
      std::max<std::uint64_t>(1, std::min<std::uint64_t>(threads, count));
  if (chunks == 1) {
    fn(std::uint64_t{0}, count, std::uint64_t{0});
    return;
  }
  std::vector<std::exception_ptr> errors(chunks);
  {
    std::vector<std::jthread> pool;
    pool.reserve(chunks);
    for (std::uint64_t c = 0; c < chunks; ++c) {
      const std::uint64_t begin = count * c / chunks;
      const std::uint64_t end = count * (c + 1) / chunks;
      pool.emplace_back([&, begin, end, c] {
        try {
          fn(begin, end, c);
        } catch (...) {
          errors[c] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw config_error(std::string("distribution: ") + what + " must be positive");
  }
}

double binomial_se(double rate, std::uint64_t b) {
  return std::sqrt(rate * (1.0 - rate) / static_cast<double>(b));
}

std::uint64_t stream_key(std::uint64_t n_x, std::uint64_t n_y) {
  return splitmix64(n_x) ^ (n_y << 1);
}

constexpr std::uint32_t kMaxRedraws = 1000;

}  // namespace

void validate(const DistributionSpec& spec, bool require_spread) {
  std::visit(Overloaded{
                 [](const NormalFamily& d) { require_positive(d.sigma, "sigma"); },
                 [](const LognormalFamily& d) { require_positive(d.sigma, "sigma"); },
                 [](const GammaFamily& d) {
                   require_positive(d.shape, "shape");
                   require_positive(d.scale, "scale");
                 },
                 [](const ZeroInflatedLognormalFamily& d) {
                   require_positive(d.sigma, "sigma");
                   if (!(d.zero_prob >= 0.0 && d.zero_prob < 1.0)) {
                     throw config_error("distribution: zero_prob must lie in [0, 1)");
                   }
                 },
                 [&](const EmpiricalFamily& d) {
                   if (!d.values || d.values->empty()) {
                     throw config_error("distribution: empirical dataset is empty");
                   }
                   if (require_spread) {
                     const auto [lo, hi] =
                         std::minmax_element(d.values->begin(), d.values->end());
                     if (!(*lo < *hi)) {
                       throw config_error(
                           "distribution: empirical dataset has zero variance");
                     }
                   }
                 },
             },
             spec);
}

std::string describe(const DistributionSpec& spec) {
  std::ostringstream os;
  os.precision(17);
  std::visit(Overloaded{
                 [&](const NormalFamily& d) { os << "normal:" << d.mu << ',' << d.sigma; },
                 [&](const LognormalFamily& d) {
                   os << "lognormal:" << d.mu << ',' << d.sigma;
                 },
                 [&](const GammaFamily& d) { os << "gamma:" << d.shape << ',' << d.scale; },
                 [&](const ZeroInflatedLognormalFamily& d) {
                   os << "zilognormal:" << d.zero_prob << ',' << d.mu << ',' << d.sigma;
                 },
                 [&](const EmpiricalFamily& d) { os << "empirical:" << d.source; },
             },
             spec);
  return os.str();
}

PopulationMoments population_moments(const DistributionSpec& spec) {
  validate(spec);
  return std::visit(
      Overloaded{
          [](const NormalFamily& d) { return normal_population_moments(d.mu, d.sigma); },
          [](const LognormalFamily& d) {
            return lognormal_population_moments(d.mu, d.sigma);
          },
          [](const GammaFamily& d) { return gamma_population_moments(d.shape, d.scale); },
          [](const ZeroInflatedLognormalFamily& d) {
            return zero_inflated_lognormal_population_moments(d.zero_prob, d.mu,
                                                              d.sigma);
          },
          [](const EmpiricalFamily& d) {
            const GroupSummary s = summarize(*d.values);
            return PopulationMoments{s.mean, s.variance, s.skewness, s.kurtosis};
          },
      },
      spec);
}

Engine substream(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                 std::uint64_t c) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ a);
  h = splitmix64(h ^ b);
  h = splitmix64(h ^ c);
  return Engine(h);
}

std::vector<double> sample_group(const DistributionSpec& spec, std::uint64_t n,
                                 Engine& engine) {
  if (n < 1) throw config_error("sample_group: n must be at least 1");
  validate(spec, /*require_spread=*/false);
  std::vector<double> out;
  out.reserve(n);
  draw(spec, n, engine, [&](double v) { out.push_back(v); });
  return out;
}

std::string_view to_string(Method m) noexcept {
  return m == Method::classic ? "classic" : "corrected";
}

std::pair<std::uint64_t, std::uint64_t> split_sizes(std::uint64_t n, double k) {
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw config_error("split: allocation ratio k must be positive");
  }
  if (static_cast<double>(n) < 2.0 * (1.0 + k)) {
    std::ostringstream os;
    os << "split: N = " << n << " is below 2(1+k) = " << 2.0 * (1.0 + k);
    throw config_error(os.str());
  }
  const auto n_x = static_cast<std::uint64_t>(std::llround(static_cast<double>(n) / (1.0 + k)));
  const std::uint64_t n_y = n - n_x;
  if (n_x < 2 || n_y < 2) {
    throw config_error("split: N = " + std::to_string(n) +
                       " leaves a group with fewer than 2 observations");
  }
  return {n_x, n_y};
}

ReplicationOutcome run_replication(const DistributionSpec& spec,
                                   std::uint64_t n_x, std::uint64_t n_y,
                                   std::uint64_t seed, std::uint64_t stream) {
  const std::uint64_t key = stream_key(n_x, n_y);
  for (std::uint32_t attempt = 0; attempt < kMaxRedraws; ++attempt) {
    Engine eng = substream(seed, key, stream, attempt);
    MomentAccumulator ax;
    MomentAccumulator ay;
    draw(spec, n_x, eng, [&](double v) { ax.add(v); });
    draw(spec, n_y, eng, [&](double v) { ay.add(v); });
    GroupSummary sx;
    GroupSummary sy;
    try {
      sx = ax.finalize();
      sy = ay.finalize();
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::data) throw;
      continue;  // degenerate draw
    }
    ReplicationOutcome out;
    out.redraws = attempt;
    out.statistic = welch_statistic(sx, sy);
    out.p_classic = p_value_classic(out.statistic);
    out.p_corrected = EdgeworthExpansion(sx.cumulants(), sy.cumulants(),
                                         DesignContext(n_x, n_y))
                          .p_value(out.statistic);
    return out;
  }
  throw data_error("replication: every redraw produced a zero-variance group");
}

void SimulationConfig::validate() const {
  validate_alpha(alpha);
  if (!(epsilon > 0.0)) throw config_error("simulate: epsilon must be positive");
  if (!(k > 0.0) || !std::isfinite(k)) throw config_error("simulate: k must be positive");
  if (replications < 100) throw config_error("simulate: B must be at least 100");
  if (sizes.empty()) throw config_error("simulate: no sample sizes given");
  if (methods.empty()) throw config_error("simulate: no methods selected");
  for (std::uint64_t n : sizes) split_sizes(n, k);
}

double TailErrorRow::max_abs_dev() const noexcept {
  return std::max(std::abs(dev_left), std::abs(dev_right));
}

const TailErrorRow* TailErrorReport::find(Method m, std::uint64_t n) const noexcept {
  for (const auto& r : rows) {
    if (r.method == m && r.n == n) return &r;
  }
  return nullptr;
}

TailErrorReport estimate_tail_errors(const SimulationConfig& config,
                                     const DistributionSpec& spec) {
  config.validate();
  validate(spec);

  TailErrorReport report;
  report.alpha = config.alpha;
  report.epsilon = config.epsilon;
  report.replications = config.replications;

  struct Counts {
    std::uint64_t classic_left = 0, classic_right = 0;
    std::uint64_t corrected_left = 0, corrected_right = 0;
    std::uint64_t redraws = 0, disagreements = 0;
  };

  const double alpha = config.alpha;
  for (std::uint64_t n : config.sizes) {
    const auto [n_x, n_y] = split_sizes(n, config.k);
    std::vector<Counts> partial(std::max(1u, config.threads == 0
                                                 ? std::thread::hardware_concurrency()
                                                 : config.threads));
    if (partial.size() > config.replications) partial.resize(config.replications);

    parallel_chunks(config.replications, static_cast<unsigned>(partial.size()),
                    [&](std::uint64_t begin, std::uint64_t end, std::uint64_t c) {
                      Counts local;
                      for (std::uint64_t i = begin; i < end; ++i) {
                        const ReplicationOutcome r =
                            run_replication(spec, n_x, n_y, config.seed, i);
                        local.redraws += r.redraws;
                        const Decision dt = decide(r.p_classic, alpha, r.statistic);
                        const Decision dc = decide(r.p_corrected, alpha, r.statistic);
                        local.classic_left += dt == Decision::reject_left;
                        local.classic_right += dt == Decision::reject_right;
                        local.corrected_left += dc == Decision::reject_left;
                        local.corrected_right += dc == Decision::reject_right;
                        local.disagreements += dt != dc;
                      }
                      partial[c] = local;
                    });

    Counts total;
    for (const Counts& p : partial) {
      total.classic_left += p.classic_left;
      total.classic_right += p.classic_right;
      total.corrected_left += p.corrected_left;
      total.corrected_right += p.corrected_right;
      total.redraws += p.redraws;
      total.disagreements += p.disagreements;
    }
    report.diagnostics.push_back({n, total.redraws, total.disagreements});

    for (Method m : config.methods) {
      TailErrorRow row;
      row.method = m;
      row.n = n;
      row.n_x = n_x;
      row.n_y = n_y;
      row.rejections_left = m == Method::classic ? total.classic_left : total.corrected_left;
      row.rejections_right =
          m == Method::classic ? total.classic_right : total.corrected_right;
      const double b = static_cast<double>(config.replications);
      row.alpha_hat_left = static_cast<double>(row.rejections_left) / b;
      row.alpha_hat_right = static_cast<double>(row.rejections_right) / b;
      row.se_left = binomial_se(row.alpha_hat_left, config.replications);
      row.se_right = binomial_se(row.alpha_hat_right, config.replications);
      row.dev_left = row.alpha_hat_left - alpha / 2.0;
      row.dev_right = row.alpha_hat_right - alpha / 2.0;
      row.total_dev = std::abs(row.alpha_hat_left + row.alpha_hat_right - alpha);
      row.pass = row.max_abs_dev() <= config.epsilon;
      report.rows.push_back(row);
    }
  }
  return report;
}

TailErrorReport with_tolerance(TailErrorReport report, double epsilon) {
  if (!(epsilon > 0.0)) throw config_error("epsilon must be positive");
  report.epsilon = epsilon;
  for (auto& r : report.rows) r.pass = r.max_abs_dev() <= epsilon;
  return report;
}

std::vector<std::uint64_t> auto_grid(std::uint64_t n_center, std::optional<double> k) {
  if (n_center < 10) throw config_error("auto_grid: center must be at least 10");
  double step = 1.0;
  if (k) {
    const double m = 1.0 + *k;
    if (std::abs(m - std::round(m)) < 1e-9) step = std::round(m);
  }
  const double lo = static_cast<double>(n_center) / 5.0;
  const double ratio = std::pow(25.0, 1.0 / 6.0);
  const double floor_n = k ? std::max(2.0 * (1.0 + *k), 2.0) : 2.0;

  std::vector<std::uint64_t> grid;
  for (int i = 0; i < 7; ++i) {
    double v = lo * std::pow(ratio, i);
    v = std::round(v / step) * step;
    v = std::max(v, std::ceil(floor_n / step) * step);
    auto n = static_cast<std::uint64_t>(v);
    if (!grid.empty() && n <= grid.back()) n = grid.back() + static_cast<std::uint64_t>(step);
    grid.push_back(n);
  }
  return grid;
}

std::optional<std::uint64_t> sweep_min_n(const TailErrorReport& report, Method method) {
  std::optional<std::uint64_t> best;
  for (const auto& r : report.rows) {
    if (r.method == method && r.pass && (!best || r.n < *best)) best = r.n;
  }
  return best;
}

std::optional<std::uint64_t> sweep_min_n(const SimulationConfig& config,
                                         const DistributionSpec& spec, Method method) {
  SimulationConfig c = config;
  c.methods = {method};
  return sweep_min_n(estimate_tail_errors(c, spec), method);
}

std::vector<double> collect_statistics(const SimulationConfig& config,
                                       const DistributionSpec& spec, std::uint64_t n) {
  SimulationConfig c = config;
  c.sizes = {n};
  c.validate();
  validate(spec);
  const auto [n_x, n_y] = split_sizes(n, config.k);
  std::vector<double> out(config.replications);
  parallel_chunks(config.replications, config.threads,
                  [&](std::uint64_t begin, std::uint64_t end, std::uint64_t) {
                    for (std::uint64_t i = begin; i < end; ++i) {
                      out[i] = run_replication(spec, n_x, n_y, config.seed, i).statistic;
                    }
                  });
  return out;
}

Histogram density_histogram(const std::vector<double>& values, std::size_t bins,
                            double lo, double hi) {
  if (bins == 0 || !(hi > lo)) throw config_error("histogram: invalid bin layout");
  if (values.empty()) throw data_error("histogram: no values");
  Histogram h;
  const double width = (hi - lo) / static_cast<double>(bins);
  h.edges.resize(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i) h.edges[i] = lo + width * static_cast<double>(i);
  std::vector<std::uint64_t> counts(bins, 0);
  for (double v : values) {
    if (!(v >= lo && v < hi)) continue;
    auto idx = static_cast<std::size_t>((v - lo) / width);
    counts[std::min(idx, bins - 1)]++;
  }
  const double total = static_cast<double>(values.size());
  h.density.resize(bins);
  h.normal_density.resize(bins);
  for (std::size_t i = 0; i < bins; ++i) {
    h.density[i] = static_cast<double>(counts[i]) / (total * width);
    h.normal_density[i] = stdnorm::pdf(0.5 * (h.edges[i] + h.edges[i + 1]));
  }
  return h;
}

}  // namespace reliab
