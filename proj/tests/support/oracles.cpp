#include "support/oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace oracle {

double central_diff(double* slot, double h, const std::function<double()>& eval) {
    const double saved = *slot;
    *slot = saved + h;
    const double plus = eval();
    *slot = saved - h;
    const double minus = eval();
    *slot = saved;
    return (plus - minus) / (2.0 * h);
}

snelfs::Vector least_squares(const snelfs::Matrix& a, const snelfs::Vector& b) {
    if (a.rows != b.size()) throw std::invalid_argument("least_squares: shape mismatch");
    const std::size_t p = a.cols;

    // Normal equations: (A^T A) beta = A^T b.
    snelfs::Matrix ata(p, p);
    snelfs::Vector atb(p, 0.0);
    for (std::size_t i = 0; i < a.rows; ++i) {
        const double* ai = a.row(i);
        for (std::size_t r = 0; r < p; ++r) {
            atb[r] += ai[r] * b[i];
            for (std::size_t c = 0; c < p; ++c) ata(r, c) += ai[r] * ai[c];
        }
    }

    for (std::size_t col = 0; col < p; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < p; ++r) {
            if (std::abs(ata(r, col)) > std::abs(ata(pivot, col))) pivot = r;
        }
        if (ata(pivot, col) == 0.0) throw std::runtime_error("least_squares: singular system");
        if (pivot != col) {
            for (std::size_t c = 0; c < p; ++c) std::swap(ata(pivot, c), ata(col, c));
            std::swap(atb[pivot], atb[col]);
        }
        for (std::size_t r = col + 1; r < p; ++r) {
            const double factor = ata(r, col) / ata(col, col);
            if (factor == 0.0) continue;
            for (std::size_t c = col; c < p; ++c) ata(r, c) -= factor * ata(col, c);
            atb[r] -= factor * atb[col];
        }
    }
    snelfs::Vector beta(p, 0.0);
    for (std::size_t r = p; r-- > 0;) {
        double s = atb[r];
        for (std::size_t c = r + 1; c < p; ++c) s -= ata(r, c) * beta[c];
        beta[r] = s / ata(r, r);
    }
    return beta;
}

double success_direct(double r_s, double i_s, double r_t, double i_t) {
    if (r_t <= 0.0) throw std::invalid_argument("success_direct: no relevant features");
    const double alpha = i_t == 0.0 ? 0.5 : std::min(0.5, r_t / i_t);
    const double penalty = i_t == 0.0 ? 0.0 : alpha * (i_s / i_t);
    return r_s / r_t - penalty;
}

} // namespace oracle
