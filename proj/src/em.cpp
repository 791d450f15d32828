#include "mkc/em.hpp"

#include <cmath>

#include "mkc/baselines.hpp"
#include "mkc/distribution.hpp"
#include "mkc/param_opt.hpp"
#include "mkc/solver.hpp"

namespace mkc {
namespace {

constexpr double kLoglikStop = 1e-8;

Vector channel_d(const std::vector<ChannelParams>& channels) {
  Vector d(static_cast<long>(channels.size()));
  for (std::size_t i = 0; i < channels.size(); ++i) {
    d[static_cast<long>(i)] = channels[i].d();
  }
  return d;
}

}  // namespace

std::vector<ChannelParams> default_init_channels(const Dataset& data,
                                                 double sigma0,
                                                 const SolverConfig& config) {
  const auto errors = residuals(data, fit_ls(data, config).theta);
  std::vector<ChannelParams> channels;
  channels.reserve(static_cast<std::size_t>(data.output_dim()));
  for (long i = 0; i < data.output_dim(); ++i) {
    const Vector e_i = channel_residuals(errors, i);
    const double rms =
        std::sqrt(e_i.squaredNorm() / static_cast<double>(e_i.size()));
    const double d = std::max(rms, 1e-12);
    channels.emplace_back(sigma0, d,
                          default_half_width(e_i.cwiseAbs().maxCoeff(), d));
  }
  return channels;
}

EmResult fit_mkc_em(const Dataset& data,
                    const std::vector<ChannelParams>& init_channels,
                    const SolverConfig& config, bool freeze_d) {
  config.validate();
  if (static_cast<long>(init_channels.size()) != data.output_dim()) {
    throw InputError("fit_mkc_em: one ChannelParams per output channel");
  }

  EmResult out;
  out.channels = init_channels;
  out.fit = fit_mkc(data, PrecisionSpec(channel_d(out.channels)), out.channels,
                    config);

  double loglik = log_likelihood(data, out.fit.theta, out.channels).value;
  out.trace.push_back({out.fit.theta, out.channels, loglik});
  out.loglik_trace.push_back(loglik);
  out.em_converged = true;

  for (long t = 1; t <= config.em_iters; ++t) {
    out.em_converged = false;
    const auto errors = residuals(data, out.fit.theta);
    for (long i = 0; i < data.output_dim(); ++i) {
      auto& channel = out.channels[static_cast<std::size_t>(i)];
      try {
        channel = optimize_channel(channel_residuals(errors, i), channel,
                                   config, freeze_d)
                      .params;
      } catch (const NumericError&) {
        // keep the previous parameters for this channel
      }
    }

    out.fit = fit_mkc(data, PrecisionSpec(channel_d(out.channels)),
                      out.channels, config, out.fit.theta);
    const double next = log_likelihood(data, out.fit.theta, out.channels).value;
    out.trace.push_back({out.fit.theta, out.channels, next});
    out.loglik_trace.push_back(next);
    ++out.outer_iterations;

    const double improvement = next - loglik;
    loglik = next;
    if (improvement < kLoglikStop) {
      out.em_converged = true;
      break;
    }
  }
  out.fit.loglik = loglik;
  return out;
}

}  // namespace mkc
