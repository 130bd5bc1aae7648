#include "plc.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include <json.hpp>

#include "errors.hpp"
#include "sampling.hpp"

namespace meshmon::plc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_valid(const Cfr& cfr) {
    if (cfr.values.empty()) throw InvalidArgument("CFR has no samples");
    if (cfr.df_hz <= 0.0) throw InvalidArgument("CFR grid spacing must be positive");
}

} // namespace

Cir cir_from_cfr(const Cfr& cfr) {
    require_valid(cfr);
    const int n = cfr.size();
    Cir cir;
    cir.tap_spacing_s = 1.0 / (static_cast<double>(n) * cfr.df_hz);
    cir.taps.assign(n, {0.0, 0.0});
    // Direct inverse DFT; grids here are a few hundred points, so the
    // quadratic transform is cheap and works for any N.
    for (int m = 0; m < n; ++m) {
        std::complex<double> acc{0.0, 0.0};
        for (int k = 0; k < n; ++k) {
            const double angle = kTwoPi * static_cast<double>(k) * m / n;
            acc += cfr.values[k] * std::polar(1.0, angle);
        }
        cir.taps[m] = acc / static_cast<double>(n);
    }
    return cir;
}

Cfr cfr_from_cir(const Cir& cir, double f_start_hz, double df_hz) {
    const int n = static_cast<int>(cir.taps.size());
    if (n == 0) throw InvalidArgument("CIR has no taps");
    Cfr cfr;
    cfr.f_start_hz = f_start_hz;
    cfr.df_hz = df_hz;
    cfr.values.assign(n, {0.0, 0.0});
    for (int k = 0; k < n; ++k) {
        std::complex<double> acc{0.0, 0.0};
        for (int m = 0; m < n; ++m) {
            const double angle = -kTwoPi * static_cast<double>(k) * m / n;
            acc += cir.taps[m] * std::polar(1.0, angle);
        }
        cfr.values[k] = acc;
    }
    return cfr;
}

std::vector<double> power_delay_profile(const Cir& cir) {
    double energy = 0.0;
    for (const auto& tap : cir.taps) energy += std::norm(tap);
    if (!(energy > 0.0)) throw DegenerateChannel("CIR carries no energy");
    std::vector<double> profile(cir.taps.size());
    for (size_t m = 0; m < cir.taps.size(); ++m) profile[m] = std::norm(cir.taps[m]) / energy;
    return profile;
}

double rms_delay_spread(const std::vector<double>& profile, double tap_spacing_s) {
    if (profile.empty()) throw InvalidArgument("empty power delay profile");
    double mean = 0.0, second = 0.0;
    for (size_t m = 0; m < profile.size(); ++m) {
        const double tau = static_cast<double>(m) * tap_spacing_s;
        mean += tau * profile[m];
        second += tau * tau * profile[m];
    }
    return std::sqrt(std::max(0.0, second - mean * mean));
}

double channel_gain(const Cfr& cfr) {
    require_valid(cfr);
    double sum = 0.0;
    for (const auto& v : cfr.values) sum += std::norm(v);
    return sum / static_cast<double>(cfr.size());
}

double gain_db(double gain_linear) { return 10.0 * std::log10(gain_linear); }

double noise_psd_dbm_per_hz(double f_hz, double df_hz) {
    if (df_hz <= 0.0) throw InvalidArgument("grid spacing must be positive");
    const double m = f_hz / df_hz;
    if (std::abs(m - std::round(m)) > 1e-6 * std::max(1.0, std::abs(m)))
        throw InvalidArgument("frequency must sit on the df grid");
    if (std::llround(m) < 1)
        throw InvalidArgument("noise density is singular at DC; the band starts above 0");
    return 10.0 * std::log10(1.0 / (f_hz * f_hz * std::pow(10.0, -15.5)));
}

double sinr(double gain_linear, double tx_psd, double interference_psd, double noise_psd) {
    const double denominator = interference_psd + noise_psd;
    if (!(denominator > 0.0)) throw InvalidArgument("interference + noise must be positive");
    return gain_linear * tx_psd / denominator;
}

double q_function(double x, QFunctionMode mode) {
    switch (mode) {
        case QFunctionMode::GaussianTail: return 0.5 * std::erfc(x / std::numbers::sqrt2);
        case QFunctionMode::Erfc: return std::erfc(x);
    }
    throw Error("unreachable");
}

double ber_bpsk(double sinr_value, QFunctionMode mode) {
    if (sinr_value < 0.0) throw InvalidArgument("SINR must be non-negative");
    return q_function(2.0 * std::sqrt(sinr_value), mode);
}

double pdr_plc(double ber, int n_bits, PdrMode mode) {
    if (ber < 0.0 || ber > 1.0) throw InvalidArgument("BER must lie in [0,1]");
    if (n_bits < 1) throw InvalidArgument("packet must carry at least one bit");
    switch (mode) {
        case PdrMode::PerBitIndependent: return std::pow(1.0 - ber, n_bits);
        case PdrMode::PaperLiteral: return 1.0 - std::pow(ber, n_bits);
    }
    throw Error("unreachable");
}

LognormalFit fit_lognormal(const std::vector<double>& samples_s) {
    if (samples_s.size() < 2) throw InvalidArgument("need at least two samples");
    double mu = 0.0;
    for (double s : samples_s) {
        if (!(s > 0.0)) throw InvalidArgument("lognormal samples must be positive");
        mu += std::log(s);
    }
    mu /= static_cast<double>(samples_s.size());
    double var = 0.0;
    for (double s : samples_s) {
        const double d = std::log(s) - mu;
        var += d * d;
    }
    var /= static_cast<double>(samples_s.size());
    return {mu, std::sqrt(var)};
}

SynthCfr synth_cfr(const SynthCfrSpec& spec) {
    if (spec.n_paths < 1) throw InvalidArgument("need at least one path");
    if (spec.n_points < 1) throw InvalidArgument("need at least one grid point");
    if (spec.max_delay_s < 0.0) throw InvalidArgument("max delay must be non-negative");

    const double tap_spacing = 1.0 / (static_cast<double>(spec.n_points) * spec.df_hz);

    SynthCfr out;
    out.delays_s.resize(spec.n_paths, 0.0);
    out.gains.resize(spec.n_paths);
    std::mt19937_64 rng(topo::splitmix64(spec.seed));
    auto uniform01 = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    for (int k = 0; k < spec.n_paths; ++k) {
        out.gains[k] = k < static_cast<int>(spec.gains.size()) ? spec.gains[k]
                                                               : std::pow(0.7, k);
        if (k == 0) continue;  // direct path at zero delay
        const double raw = uniform01() * spec.max_delay_s;
        out.delays_s[k] = std::round(raw / tap_spacing) * tap_spacing;
    }

    out.cfr.f_start_hz = spec.f_start_hz;
    out.cfr.df_hz = spec.df_hz;
    out.cfr.values.assign(spec.n_points, {0.0, 0.0});
    for (int i = 0; i < spec.n_points; ++i) {
        const double f = out.cfr.freq_hz(i);
        std::complex<double> acc{0.0, 0.0};
        for (int k = 0; k < spec.n_paths; ++k)
            acc += out.gains[k] * std::polar(1.0, -kTwoPi * f * out.delays_s[k]);
        out.cfr.values[i] = acc;
    }
    return out;
}

Cfr load_cfr_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open CFR file '" + path + "'");
    std::vector<double> freqs;
    std::vector<std::complex<double>> values;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;  // freq_hz,re,im
            continue;
        }
        std::stringstream row(line);
        std::string cell;
        double parsed[3];
        for (int i = 0; i < 3; ++i) {
            if (!std::getline(row, cell, ','))
                throw IoError("CFR row with fewer than three columns: " + line);
            parsed[i] = std::stod(cell);
        }
        freqs.push_back(parsed[0]);
        values.emplace_back(parsed[1], parsed[2]);
    }
    if (freqs.size() < 2) throw IoError("CFR file needs at least two samples");

    Cfr cfr;
    cfr.f_start_hz = freqs.front();
    cfr.df_hz = freqs[1] - freqs[0];
    if (!(cfr.df_hz > 0.0)) throw IoError("CFR frequencies must increase");
    for (size_t i = 1; i < freqs.size(); ++i) {
        const double expected = cfr.f_start_hz + static_cast<double>(i) * cfr.df_hz;
        if (std::abs(freqs[i] - expected) > 1e-6 * std::max(1.0, std::abs(expected)))
            throw InvalidArgument("CFR grid is not uniform at row " + std::to_string(i + 1));
    }
    cfr.values = std::move(values);
    return cfr;
}

void save_cfr_csv(const Cfr& cfr, const std::string& path, const std::string& comment) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write CFR file '" + path + "'");
    if (!comment.empty()) out << "# " << comment << "\n";
    out << "freq_hz,re,im\n";
    out.precision(17);
    for (int k = 0; k < cfr.size(); ++k)
        out << cfr.freq_hz(k) << "," << cfr.values[k].real() << "," << cfr.values[k].imag()
            << "\n";
}

PlcLinkMetrics characterize_link(const Cfr& cfr, const PlcOptions& options) {
    PlcLinkMetrics metrics;
    metrics.gain = channel_gain(cfr);
    metrics.gain_db = gain_db(metrics.gain);
    const Cir cir = cir_from_cfr(cfr);
    metrics.tau_rms_s = rms_delay_spread(power_delay_profile(cir), cir.tap_spacing_s);
    metrics.sinr = sinr(metrics.gain, options.tx_psd_w_per_hz, options.interference_w_per_hz,
                        options.noise_w_per_hz);
    metrics.ber = ber_bpsk(metrics.sinr, options.q_mode);
    metrics.pdr = pdr_plc(metrics.ber, options.packet_bits, options.pdr_mode);
    metrics.packet_bits = options.packet_bits;
    return metrics;
}

std::string metrics_to_json(const PlcLinkMetrics& metrics, const PlcOptions& options) {
    nlohmann::json j{
        {"gain", metrics.gain},
        {"gain_db", metrics.gain_db},
        {"tau_rms_s", metrics.tau_rms_s},
        {"sinr", metrics.sinr},
        {"ber", metrics.ber},
        {"pdr", metrics.pdr},
        {"packet_bits", metrics.packet_bits},
        {"tx_psd_w_per_hz", options.tx_psd_w_per_hz},
        {"noise_w_per_hz", options.noise_w_per_hz},
        {"interference_w_per_hz", options.interference_w_per_hz},
        {"q_mode", options.q_mode == QFunctionMode::GaussianTail ? "gaussian-tail" : "erfc"},
        {"pdr_mode", options.pdr_mode == PdrMode::PerBitIndependent ? "per-bit" : "paper"},
    };
    return j.dump(2);
}

} // namespace meshmon::plc
