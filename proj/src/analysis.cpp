#include "accordion/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "accordion/fft.hpp"

namespace accordion {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string num_str(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

struct WindowSamples {
    std::vector<double> xc;  // positions centered on their mean, um
    std::vector<double> y;   // intensities minus their mean
    double x_mean = 0.0;
    double y_mean = 0.0;
    double dx = 0.0;
};

WindowSamples collect_window(const LatticeProfile& profile,
                             const std::optional<std::pair<double, double>>& window) {
    const std::size_t n = profile.intensities.size();
    if (n < 2) throw ParameterError("fit_sinusoid: profile needs at least 2 samples");
    if (!std::isfinite(profile.dx_um) || profile.dx_um <= 0.0)
        throw ParameterError("fit_sinusoid: profile sample pitch must be positive");

    std::size_t i0 = 0;
    std::size_t i1 = n;
    if (window) {
        if (!(window->first < window->second))
            throw ParameterError("fit_sinusoid: empty fit window");
        const double lo = (window->first - profile.x0_um) / profile.dx_um;
        const double hi = (window->second - profile.x0_um) / profile.dx_um;
        if (hi < 0.0 || lo > static_cast<double>(n - 1))
            throw FitError("fit_sinusoid: window lies outside the profile");
        i0 = lo <= 0.0 ? 0 : static_cast<std::size_t>(std::ceil(lo - 1e-9));
        i1 = hi >= static_cast<double>(n - 1)
                 ? n
                 : static_cast<std::size_t>(std::floor(hi + 1e-9)) + 1;
        if (i1 <= i0) throw FitError("fit_sinusoid: window contains no samples");
    }
    const std::size_t count = i1 - i0;
    if (count < 16)
        throw FitError("fit_sinusoid: window holds " + std::to_string(count) +
                       " samples; need at least 16");

    WindowSamples w;
    w.dx = profile.dx_um;
    w.xc.resize(count);
    w.y.resize(count);
    double xsum = 0.0;
    double ysum = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        const double v = profile.intensities[i0 + i];
        if (!std::isfinite(v)) throw ParameterError("fit_sinusoid: profile contains non-finite samples");
        xsum += profile.x_at(i0 + i);
        ysum += v;
    }
    w.x_mean = xsum / static_cast<double>(count);
    w.y_mean = ysum / static_cast<double>(count);
    for (std::size_t i = 0; i < count; ++i) {
        w.xc[i] = profile.x_at(i0 + i) - w.x_mean;
        w.y[i] = profile.intensities[i0 + i] - w.y_mean;
    }
    return w;
}

// Peak of the zero-padded discrete spectrum (cycles/um), refined by a 3-point
// parabola. The search floor `min_fringes` keeps the slowly varying envelope
// hump (which can carry more spectral weight than the fringe comb) out of the
// running. Throws when no admissible bin stands clear of the noise floor.
double spectral_peak_frequency(const WindowSamples& w, double min_fringes) {
    const std::size_t n = w.y.size();
    std::size_t nfft = 1;
    while (nfft < 4 * n) nfft <<= 1;
    std::vector<cdouble> buf(nfft, cdouble{0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) buf[i] = w.y[i];
    fft(buf);

    const std::size_t half = nfft / 2;
    const double span = w.dx * static_cast<double>(n);
    const auto k_min = static_cast<std::size_t>(
        std::ceil(min_fringes / span * static_cast<double>(nfft) * w.dx));
    if (k_min + 8 >= half)
        throw FitError("fit_sinusoid: window too short to hold " + num_str(min_fringes) +
                       " fringe periods");

    std::vector<double> mag(half - k_min, 0.0);
    std::size_t best = 0;
    for (std::size_t k = k_min; k < half; ++k) {
        mag[k - k_min] = std::abs(buf[k]);
        if (mag[k - k_min] > mag[best]) best = k - k_min;
    }
    std::vector<double> sorted = mag;
    const std::size_t mid = sorted.size() / 2;
    std::nth_element(sorted.begin(), sorted.begin() + mid, sorted.end());
    const double floor_mag = sorted[mid];
    if (!(mag[best] > 8.0 * floor_mag) || mag[best] <= 0.0)
        throw FitError("fit_sinusoid: no spectral peak above the noise floor");

    double delta = 0.0;
    if (best > 0 && best + 1 < mag.size()) {
        const double ym = mag[best - 1];
        const double y0 = mag[best];
        const double yp = mag[best + 1];
        const double denom = ym - 2.0 * y0 + yp;
        if (denom != 0.0) delta = std::clamp(0.5 * (ym - yp) / denom, -0.5, 0.5);
    }
    return (static_cast<double>(best + k_min) + delta) /
           (static_cast<double>(nfft) * w.dx);
}

struct LinearAtK {
    double c0 = 0.0;
    double a = 0.0;
    double b = 0.0;
    double ss = 0.0;
};

// Best offset + a cos(K xc) + b sin(K xc) at fixed K, with the residual sum of
// squares from an explicit second pass (robust for near-perfect fits).
LinearAtK linear_at(const WindowSamples& w, double K, std::vector<double>& cbuf,
                    std::vector<double>& sbuf) {
    const std::size_t n = w.y.size();
    cbuf.resize(n);
    sbuf.resize(n);
    double sc = 0.0, ssn = 0.0, scc = 0.0, sss = 0.0, scs = 0.0;
    double sy = 0.0, syc = 0.0, sys = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double c = std::cos(K * w.xc[i]);
        const double s = std::sin(K * w.xc[i]);
        cbuf[i] = c;
        sbuf[i] = s;
        sc += c;
        ssn += s;
        scc += c * c;
        sss += s * s;
        scs += c * s;
        sy += w.y[i];
        syc += w.y[i] * c;
        sys += w.y[i] * s;
    }

    double A[3][4] = {{static_cast<double>(n), sc, ssn, sy},
                      {sc, scc, scs, syc},
                      {ssn, scs, sss, sys}};
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
        if (std::abs(A[piv][col]) < 1e-12 * static_cast<double>(n))
            throw FitError("fit_sinusoid: degenerate normal equations");
        if (piv != col)
            for (int c = 0; c < 4; ++c) std::swap(A[piv][c], A[col][c]);
        for (int r = col + 1; r < 3; ++r) {
            const double f = A[r][col] / A[col][col];
            for (int c = col; c < 4; ++c) A[r][c] -= f * A[col][c];
        }
    }
    LinearAtK out;
    out.b = A[2][3] / A[2][2];
    out.a = (A[1][3] - A[1][2] * out.b) / A[1][1];
    out.c0 = (A[0][3] - A[0][1] * out.a - A[0][2] * out.b) / A[0][0];

    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = w.y[i] - out.c0 - out.a * cbuf[i] - out.b * sbuf[i];
        ss += r * r;
    }
    out.ss = ss;
    return out;
}

struct BrentResult {
    double x = 0.0;
    int iters = 0;
    bool converged = false;
};

// Derivative-free 1-D minimization over [a, b] (golden section with parabolic
// acceleration), relative tolerance on the abscissa.
template <typename F>
BrentResult brent_min(F&& f, double a, double b, double rtol, int maxiter) {
    constexpr double golden = 0.3819660112501051;
    double x = a + golden * (b - a);
    double w = x, v = x;
    double fx = f(x), fw = fx, fv = fx;
    double d = 0.0, e = 0.0;
    for (int it = 1; it <= maxiter; ++it) {
        const double m = 0.5 * (a + b);
        const double tol = rtol * std::abs(x) + 1e-300;
        if (std::abs(x - m) <= 2.0 * tol - 0.5 * (b - a)) return {x, it, true};
        bool golden_step = true;
        if (std::abs(e) > tol) {
            double r = (x - w) * (fx - fv);
            double q = (x - v) * (fx - fw);
            double p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if (q > 0.0) p = -p;
            q = std::abs(q);
            const double etmp = e;
            e = d;
            if (std::abs(p) < std::abs(0.5 * q * etmp) && p > q * (a - x) && p < q * (b - x)) {
                d = p / q;
                const double u = x + d;
                if (u - a < 2.0 * tol || b - u < 2.0 * tol) d = (m > x) ? tol : -tol;
                golden_step = false;
            }
        }
        if (golden_step) {
            e = (x < m) ? b - x : a - x;
            d = golden * e;
        }
        const double u = (std::abs(d) >= tol) ? x + d : x + ((d > 0.0) ? tol : -tol);
        const double fu = f(u);
        if (fu <= fx) {
            if (u < x) b = x; else a = x;
            v = w; fv = fw;
            w = x; fw = fx;
            x = u; fx = fu;
        } else {
            if (u < x) a = u; else b = u;
            if (fu <= fw || w == x) {
                v = w; fv = fw;
                w = u; fw = fu;
            } else if (fu <= fv || v == x || v == w) {
                v = u; fv = fu;
            }
        }
    }
    return {x, maxiter, false};
}

std::size_t count_distinct(std::vector<double> vals) {
    std::sort(vals.begin(), vals.end());
    return static_cast<std::size_t>(std::unique(vals.begin(), vals.end()) - vals.begin());
}

}  // namespace

void IntensityImage::validate() const {
    if (width == 0 || height == 0) throw ShapeError("image: dimensions must be non-zero");
    if (pixels.size() != width * height)
        throw ShapeError("image: " + std::to_string(pixels.size()) + " pixels do not fill " +
                         std::to_string(width) + "x" + std::to_string(height));
    if (!std::isfinite(pixel_pitch_um) || pixel_pitch_um <= 0.0)
        throw DomainError("image: pixel pitch must be positive");
    for (double p : pixels)
        if (!std::isfinite(p) || p < 0.0)
            throw DomainError("image: pixel values must be finite and non-negative");
}

LatticeProfile integrate_columns(const IntensityImage& image, const IntensityImage* background) {
    image.validate();
    if (background) {
        background->validate();
        if (background->width != image.width || background->height != image.height)
            throw ShapeError("integrate_columns: background " + std::to_string(background->width) +
                             "x" + std::to_string(background->height) + " does not match image " +
                             std::to_string(image.width) + "x" + std::to_string(image.height));
    }

    LatticeProfile prof;
    prof.x0_um = 0.0;
    prof.dx_um = image.pixel_pitch_um;
    prof.intensities.assign(image.width, 0.0);
    for (std::size_t col = 0; col < image.width; ++col) {
        double total = 0.0;
        for (std::size_t row = 0; row < image.height; ++row) {
            double v = image.at(row, col);
            if (background) v -= background->at(row, col);
            total += v;
        }
        prof.intensities[col] = std::max(0.0, total);
    }
    return prof;
}

SinusoidFit fit_sinusoid(const LatticeProfile& profile,
                         std::optional<std::pair<double, double>> window_um) {
    WindowSamples w = collect_window(profile, window_um);

    const auto [ymin, ymax] = std::minmax_element(w.y.begin(), w.y.end());
    if (*ymin == *ymax) throw FitError("fit_sinusoid: constant profile; no fringes to fit");

    const double freq = spectral_peak_frequency(w);
    const double span = w.dx * static_cast<double>(w.y.size() - 1);
    const double fringes = freq * span;
    if (fringes < 10.0 - 1e-9)
        throw FitError("fit_sinusoid: window spans " + num_str(fringes) +
                       " fringe periods; need at least 10");

    const double df = 0.6 / span;
    const double k_lo = kTwoPi * (freq - df);
    const double k_hi = kTwoPi * (freq + df);

    std::vector<double> cbuf, sbuf;
    auto objective = [&](double K) { return linear_at(w, K, cbuf, sbuf).ss; };
    const BrentResult res = brent_min(objective, k_lo, k_hi, 1e-12, 200);
    const LinearAtK lin = linear_at(w, res.x, cbuf, sbuf);

    SinusoidFit fit;
    fit.offset = w.y_mean + lin.c0;
    fit.amplitude = std::hypot(lin.a, lin.b);
    fit.spacing_nm = kTwoPi / res.x * 1e3;
    fit.phase_rad = std::remainder(std::atan2(-lin.b, lin.a) - res.x * w.x_mean, kTwoPi);
    fit.rms_residual = std::sqrt(lin.ss / static_cast<double>(w.y.size()));
    fit.iterations = res.iters;
    if (!res.converged)
        throw SinusoidFitError("fit_sinusoid: spacing refinement did not converge within 200 iterations",
                               fit);
    return fit;
}

double contrast(const SinusoidFit& fit) {
    if (!(fit.offset > 0.0))
        throw DomainError("contrast: fit offset must be positive");
    return fit.amplitude / fit.offset;
}

std::vector<std::pair<double, double>> local_spacing(const LatticeProfile& profile,
                                                     double window_width_um, double stride_um) {
    if (!std::isfinite(window_width_um) || window_width_um <= 0.0 || !std::isfinite(stride_um) ||
        stride_um <= 0.0)
        throw ParameterError("local_spacing: window width and stride must be positive");

    WindowSamples whole = collect_window(profile, std::nullopt);
    const double d_est_um = 1.0 / spectral_peak_frequency(whole);
    if (window_width_um < 10.0 * d_est_um)
        throw FitError("local_spacing: window " + num_str(window_width_um) +
                       " um holds fewer than 10 fringes of spacing " + num_str(d_est_um) + " um");

    const std::size_t n = profile.intensities.size();
    const double x_start = profile.x0_um;
    const double x_end = profile.x0_um + profile.dx_um * static_cast<double>(n - 1);
    if (window_width_um > x_end - x_start)
        throw FitError("local_spacing: window is wider than the profile");

    std::vector<std::pair<double, double>> out;
    for (std::size_t k = 0;; ++k) {
        const double w0 = x_start + static_cast<double>(k) * stride_um;
        if (w0 + window_width_um > x_end + 1e-9 * profile.dx_um) break;
        try {
            const SinusoidFit fit = fit_sinusoid(profile, std::make_pair(w0, w0 + window_width_um));
            out.emplace_back(w0 + 0.5 * window_width_um, fit.spacing_nm);
        } catch (const FitError&) {
            // skip windows that fail to fit; the count check below catches systematic failure
        }
    }
    if (out.size() < 3)
        throw FitError("local_spacing: only " + std::to_string(out.size()) +
                       " windows converged; need at least 3");
    return out;
}

ChirpFit chirp_fit(const std::vector<std::pair<double, double>>& spacing_by_x) {
    const std::size_t n = spacing_by_x.size();
    if (n < 3) throw ParameterError("chirp_fit: need at least 3 samples");
    std::vector<double> xs(n);
    for (std::size_t i = 0; i < n; ++i) xs[i] = spacing_by_x[i].first;
    if (count_distinct(xs) < 3)
        throw ParameterError("chirp_fit: need at least 3 distinct sample positions");

    double xm = 0.0, ym = 0.0;
    for (const auto& [x, y] : spacing_by_x) {
        xm += x;
        ym += y;
    }
    xm /= static_cast<double>(n);
    ym /= static_cast<double>(n);

    double sxx = 0.0, sxy = 0.0;
    for (const auto& [x, y] : spacing_by_x) {
        sxx += (x - xm) * (x - xm);
        sxy += (x - xm) * (y - ym);
    }
    const double slope = sxy / sxx;          // nm per um
    const double intercept = ym - slope * xm;

    double ss = 0.0;
    for (const auto& [x, y] : spacing_by_x) {
        const double r = y - intercept - slope * x;
        ss += r * r;
    }
    const double sigma = std::sqrt(std::max(0.0, ss) / static_cast<double>(n - 2));

    const auto [xlo, xhi] = std::minmax_element(xs.begin(), xs.end());
    const double x_center = 0.5 * (*xlo + *xhi);

    ChirpFit out;
    out.center_spacing_nm = intercept + slope * x_center;
    out.chirp_nm_per_mm = slope * 1e3;
    out.chirp_uncertainty_nm_per_mm = sigma / std::sqrt(sxx) * 1e3;
    return out;
}

LinearFit fit_spacing_vs_index(const std::vector<std::pair<int, double>>& spacing_by_j) {
    const std::size_t n = spacing_by_j.size();
    if (n < 3) throw ParameterError("fit_spacing_vs_index: need at least 3 samples");
    std::vector<double> js(n);
    for (std::size_t i = 0; i < n; ++i) js[i] = static_cast<double>(spacing_by_j[i].first);
    if (count_distinct(js) < 3)
        throw ParameterError("fit_spacing_vs_index: need at least 3 distinct row indices");

    double xm = 0.0, ym = 0.0;
    for (const auto& [j, d] : spacing_by_j) {
        xm += static_cast<double>(j);
        ym += d;
    }
    xm /= static_cast<double>(n);
    ym /= static_cast<double>(n);

    double sxx = 0.0, sxy = 0.0;
    for (const auto& [j, d] : spacing_by_j) {
        const double dx = static_cast<double>(j) - xm;
        sxx += dx * dx;
        sxy += dx * (d - ym);
    }
    const double slope = sxy / sxx;
    const double intercept = ym - slope * xm;

    double ss = 0.0;
    for (const auto& [j, d] : spacing_by_j) {
        const double r = d - intercept - slope * static_cast<double>(j);
        ss += r * r;
    }
    const double sigma = std::sqrt(std::max(0.0, ss) / static_cast<double>(n - 2));

    LinearFit out;
    out.intercept_nm = intercept;
    out.slope_nm = slope;
    out.intercept_se_nm = sigma * std::sqrt(1.0 / static_cast<double>(n) + xm * xm / sxx);
    out.slope_se_nm = sigma / std::sqrt(sxx);
    return out;
}

TiltFit fit_spacing_vs_tilt(const std::vector<TiltSample>& samples) {
    const std::size_t n = samples.size();
    if (n < 3) throw ParameterError("fit_spacing_vs_tilt: need at least 3 samples");

    std::vector<double> cosines(n), js(n);
    for (std::size_t i = 0; i < n; ++i) {
        cosines[i] = std::cos(samples[i].kappa_rad);
        js[i] = static_cast<double>(samples[i].j);
    }
    if (count_distinct(cosines) < 2)
        throw ParameterError("fit_spacing_vs_tilt: tilt-degenerate; need at least 2 distinct cos(kappa)");
    if (count_distinct(js) < 2)
        throw ParameterError("fit_spacing_vs_tilt: need at least 2 distinct row indices");

    // d = P0 u + P1 v with u = cos(kappa), v = j cos(kappa); no intercept
    double suu = 0.0, suv = 0.0, svv = 0.0, suy = 0.0, svy = 0.0;
    for (const TiltSample& s : samples) {
        const double u = std::cos(s.kappa_rad);
        const double v = static_cast<double>(s.j) * u;
        suu += u * u;
        suv += u * v;
        svv += v * v;
        suy += u * s.spacing_nm;
        svy += v * s.spacing_nm;
    }
    const double det = suu * svv - suv * suv;
    if (!(det > 1e-12 * suu * svv))
        throw ParameterError("fit_spacing_vs_tilt: degenerate sample span");

    const double p0 = (svv * suy - suv * svy) / det;
    const double p1 = (suu * svy - suv * suy) / det;

    double ss = 0.0;
    for (const TiltSample& s : samples) {
        const double u = std::cos(s.kappa_rad);
        const double r = s.spacing_nm - (p0 + p1 * static_cast<double>(s.j)) * u;
        ss += r * r;
    }
    const double sigma2 = std::max(0.0, ss) / static_cast<double>(n - 2);

    TiltFit out;
    out.md0_over_2_nm = p0;
    out.mdelta_over_2_nm = p1;
    out.md0_se_nm = std::sqrt(sigma2 * svv / det);
    out.mdelta_se_nm = std::sqrt(sigma2 * suu / det);
    return out;
}

}  // namespace accordion
