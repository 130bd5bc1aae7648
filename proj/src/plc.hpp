#ifndef MESHMON_PLC_HPP
#define MESHMON_PLC_HPP

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace meshmon::plc {

// Channel frequency response on a uniform grid: point k sits at
// f_start + k * df. The default measurement grid is 200 kHz spacing across
// the usable 2-40 MHz band.
struct Cfr {
    double f_start_hz = 2.0e6;
    double df_hz = 200.0e3;
    std::vector<std::complex<double>> values;

    int size() const { return static_cast<int>(values.size()); }
    double freq_hz(int k) const { return f_start_hz + k * df_hz; }
};

struct Cir {
    double tap_spacing_s = 0.0;  // 1 / (N * df)
    std::vector<std::complex<double>> taps;
};

enum class QFunctionMode {
    GaussianTail,  // Q(x) = erfc(x / sqrt(2)) / 2, the BPSK convention
    Erfc           // literal complementary error function
};

enum class PdrMode {
    PerBitIndependent,  // (1 - BER)^N
    PaperLiteral        // 1 - BER^N
};

struct LognormalFit {
    double mu = 0.0;     // log-seconds
    double sigma = 0.0;  // >= 0
};

// Inverse DFT of the CFR samples; tap spacing 1/(N*df).
Cir cir_from_cfr(const Cfr& cfr);

// Forward transform back to the frequency grid (round-trip checks).
Cfr cfr_from_cir(const Cir& cir, double f_start_hz, double df_hz);

// p(tau_m) = |h_m|^2 / sum |h|^2; throws DegenerateChannel on zero energy.
std::vector<double> power_delay_profile(const Cir& cir);

// sqrt(E[tau^2] - E[tau]^2) with tau_m = m * tap_spacing.
double rms_delay_spread(const std::vector<double>& profile, double tap_spacing_s);

// Mean of |H|^2 over the grid (linear); convert with gain_db.
double channel_gain(const Cfr& cfr);
double gain_db(double gain_linear);

// Coloured background noise density at f = m*df, m >= 1:
// 10*log10(1 / ((m*df)^2 * 10^-15.5)) dBm/Hz. DC is excluded.
double noise_psd_dbm_per_hz(double f_hz, double df_hz);

// SINR = G * Ps / (I + Pn); densities in W/Hz.
double sinr(double gain_linear, double tx_psd, double interference_psd, double noise_psd);

double q_function(double x, QFunctionMode mode = QFunctionMode::GaussianTail);

// BPSK bit error rate Q(2*sqrt(sinr)).
double ber_bpsk(double sinr_value, QFunctionMode mode = QFunctionMode::GaussianTail);

// Packet delivery ratio from the bit error rate.
double pdr_plc(double ber, int n_bits, PdrMode mode = PdrMode::PerBitIndependent);

// Maximum-likelihood lognormal fit: mu/sigma of the log samples
// (population sigma). Requires at least two strictly positive samples.
LognormalFit fit_lognormal(const std::vector<double>& samples_s);

struct SynthCfrSpec {
    int n_paths = 1;
    double max_delay_s = 0.0;
    std::vector<double> gains;  // per path; missing entries decay as 0.7^k
    std::uint64_t seed = 0;
    double f_start_hz = 2.0e6;
    double df_hz = 200.0e3;
    int n_points = 190;
};

struct SynthCfr {
    Cfr cfr;
    std::vector<double> delays_s;  // snapped to the tap grid; path 0 at 0
    std::vector<double> gains;
};

// Multipath stand-in for measured responses: H(f) = sum g_k exp(-j2πf τ_k),
// delays snapped to the tap grid so synthetic channels stay leakage-free.
SynthCfr synth_cfr(const SynthCfrSpec& spec);

// CSV with a header row (freq_hz,re,im); '#' lines are comments.
Cfr load_cfr_csv(const std::string& path);
void save_cfr_csv(const Cfr& cfr, const std::string& path, const std::string& comment = "");

struct PlcOptions {
    double tx_psd_w_per_hz = 3.162e-12;  // -55 dBm/Hz
    double noise_w_per_hz = 0.13;        // aggregate over the 2-40 MHz band
    double interference_w_per_hz = 0.0;
    int packet_bits = 136;
    QFunctionMode q_mode = QFunctionMode::GaussianTail;
    PdrMode pdr_mode = PdrMode::PerBitIndependent;
};

struct PlcLinkMetrics {
    double gain = 0.0;
    double gain_db = 0.0;
    double tau_rms_s = 0.0;
    double sinr = 0.0;
    double ber = 0.0;
    double pdr = 0.0;
    int packet_bits = 136;
};

// Full chain: CFR -> CIR -> delay spread, gain -> SINR -> BER -> PDR.
PlcLinkMetrics characterize_link(const Cfr& cfr, const PlcOptions& options = {});

std::string metrics_to_json(const PlcLinkMetrics& metrics, const PlcOptions& options);

} // namespace meshmon::plc

#endif
