#include "aqw/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include <Eigen/Eigenvalues>

namespace aqw {

namespace {

constexpr double kMatrixTol = 1e-10;

std::vector<Eigen::Index> strides_of(const std::vector<int>& dims) {
    std::vector<Eigen::Index> strides(dims.size(), 1);
    for (std::size_t i = dims.size(); i-- > 1;) strides[i - 1] = strides[i] * dims[i];
    return strides;
}

std::map<int, int> index_map(const std::vector<int>& levels) {
    std::map<int, int> m;
    for (std::size_t i = 0; i < levels.size(); ++i) m.emplace(levels[i], static_cast<int>(i));
    return m;
}

}  // namespace

SupportBasis SupportBasis::box(int xmin, int xmax, int ymin, int ymax) {
    if (xmin > xmax || ymin > ymax) throw ConfigError("empty support box");
    SupportBasis b;
    for (int x = xmin; x <= xmax; ++x) b.xs.push_back(x);
    for (int y = ymin; y <= ymax; ++y) b.ys.push_back(y);
    return b;
}

SupportBasis SupportBasis::light_cone(int steps, int l, int k) {
    return box(l - steps, l + steps, k - steps, k + steps);
}

SupportBasis SupportBasis::occupied(const WalkerState& s) {
    std::set<int> xs;
    std::set<int> ys;
    for (const auto& [site, amp] : s.amplitudes()) {
        xs.insert(site.x);
        ys.insert(site.y);
    }
    return {{xs.begin(), xs.end()}, {ys.begin(), ys.end()}};
}

DensityMatrix::DensityMatrix(std::vector<Subsystem> labels, std::vector<int> dims,
                             Eigen::MatrixXcd data)
    : labels_(std::move(labels)), dims_(std::move(dims)), data_(std::move(data)) {
    if (labels_.empty() || labels_.size() != dims_.size()) {
        throw BadSubsystemSet("labels and dims must be nonempty and of equal length");
    }
    std::set<Subsystem> unique(labels_.begin(), labels_.end());
    if (unique.size() != labels_.size()) throw BadSubsystemSet("duplicate subsystem label");
    Eigen::Index total = 1;
    for (int d : dims_) {
        if (d < 1) throw BadSubsystemSet("subsystem dimension must be positive");
        total *= d;
    }
    if (data_.rows() != total || data_.cols() != total) {
        throw BadSubsystemSet("matrix size does not match subsystem dims");
    }
    if ((data_ - data_.adjoint()).cwiseAbs().maxCoeff() > kMatrixTol) {
        throw NumericalInstability("density matrix is not Hermitian");
    }
    if (std::abs(data_.trace() - Complex(1.0, 0.0)) > kMatrixTol) {
        throw NumericalInstability("density matrix trace differs from 1");
    }
}

std::size_t DensityMatrix::slot(Subsystem s) const {
    auto it = std::find(labels_.begin(), labels_.end(), s);
    if (it == labels_.end()) throw BadSubsystemSet("subsystem not present");
    return static_cast<std::size_t>(it - labels_.begin());
}

DensityMatrix to_density(const WalkerState& s, const SupportBasis& basis) {
    const auto xi = index_map(basis.xs);
    const auto yi = index_map(basis.ys);
    const int dx = static_cast<int>(basis.xs.size());
    const int dy = static_cast<int>(basis.ys.size());
    if (dx == 0 || dy == 0) throw SupportTooSmall("empty support basis");

    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dx) * dy * 2);
    for (const auto& [site, amp] : s.amplitudes()) {
        auto ix = xi.find(site.x);
        auto iy = yi.find(site.y);
        if (ix == xi.end() || iy == yi.end()) {
            throw SupportTooSmall("amplitude at (" + std::to_string(site.x) + ", " +
                                  std::to_string(site.y) + ") lies outside the support basis");
        }
        v((static_cast<Eigen::Index>(ix->second) * dy + iy->second) * 2 + site.c) = amp;
    }
    return {{Subsystem::X, Subsystem::Y, Subsystem::Coin}, {dx, dy, 2}, v * v.adjoint()};
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const Subsystem> keep) {
    const auto& dims = rho.dims();
    const std::size_t n = dims.size();
    std::vector<bool> kept(n, false);
    for (Subsystem s : keep) {
        const std::size_t slot = rho.slot(s);
        if (kept[slot]) throw BadSubsystemSet("duplicate subsystem in keep set");
        kept[slot] = true;
    }
    const auto kept_count = static_cast<std::size_t>(std::count(kept.begin(), kept.end(), true));
    if (kept_count == 0 || kept_count == n) {
        throw BadSubsystemSet("keep set must be a nonempty proper subset");
    }

    std::vector<Subsystem> out_labels;
    std::vector<int> out_dims;
    std::vector<int> traced_dims;
    for (std::size_t i = 0; i < n; ++i) {
        if (kept[i]) {
            out_labels.push_back(rho.labels()[i]);
            out_dims.push_back(dims[i]);
        } else {
            traced_dims.push_back(dims[i]);
        }
    }
    const auto full_strides = strides_of(dims);
    const auto keep_strides = strides_of(out_dims);
    const auto trace_strides = strides_of(traced_dims);
    Eigen::Index keep_dim = 1;
    for (int d : out_dims) keep_dim *= d;
    Eigen::Index trace_dim = 1;
    for (int d : traced_dims) trace_dim *= d;

    // full[k * trace_dim + t] = full index of (kept digits k, traced digits t)
    std::vector<Eigen::Index> full(static_cast<std::size_t>(keep_dim * trace_dim), 0);
    for (Eigen::Index f = 0; f < rho.dim(); ++f) {
        Eigen::Index k = 0;
        Eigen::Index t = 0;
        std::size_t ki = 0;
        std::size_t ti = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const Eigen::Index digit = (f / full_strides[i]) % dims[i];
            if (kept[i]) {
                k += digit * keep_strides[ki++];
            } else {
                t += digit * trace_strides[ti++];
            }
        }
        full[static_cast<std::size_t>(k * trace_dim + t)] = f;
    }

    const Eigen::MatrixXcd& m = rho.data();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(keep_dim, keep_dim);
    for (Eigen::Index j = 0; j < keep_dim; ++j) {
        for (Eigen::Index i = 0; i < keep_dim; ++i) {
            Complex acc{};
            for (Eigen::Index t = 0; t < trace_dim; ++t) {
                acc += m(full[static_cast<std::size_t>(i * trace_dim + t)],
                         full[static_cast<std::size_t>(j * trace_dim + t)]);
            }
            out(i, j) = acc;
        }
    }
    return {std::move(out_labels), std::move(out_dims), std::move(out)};
}

Eigen::MatrixXcd partial_transpose(const DensityMatrix& rho, Subsystem which) {
    const std::size_t slot = rho.slot(which);
    const Eigen::Index stride = strides_of(rho.dims())[slot];
    const Eigen::Index d = rho.dims()[slot];
    const Eigen::Index n = rho.dim();
    const Eigen::MatrixXcd& m = rho.data();
    Eigen::MatrixXcd out(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const Eigen::Index dj = (j / stride) % d;
        for (Eigen::Index i = 0; i < n; ++i) {
            const Eigen::Index di = (i / stride) % d;
            out(i, j) = m(i + (dj - di) * stride, j + (di - dj) * stride);
        }
    }
    return out;
}

double trace_norm(const Eigen::MatrixXcd& hermitian) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitian, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericalInstability("eigensolver failed");
    return solver.eigenvalues().cwiseAbs().sum();
}

double negativity(const DensityMatrix& rho, Subsystem which) {
    const double n = (trace_norm(partial_transpose(rho, which)) - 1.0) / 2.0;
    if (n < -kMatrixTol) {
        throw NumericalInstability("negativity " + std::to_string(n) + " below zero");
    }
    return std::max(n, 0.0);
}

double EntanglementReport::recomputed_pi_tangle() const {
    auto sq = [](double n) { return 4.0 * n * n; };
    const double px = sq(n_x_rest) - (sq(n_xy) + sq(n_xc));
    const double py = sq(n_y_rest) - (sq(n_yc) + sq(n_xy));
    const double pc = sq(n_c_rest) - (sq(n_xc) + sq(n_yc));
    return (px + py + pc) / 3.0;
}

EntanglementReport entanglement_report(const WalkerState& s) {
    const DensityMatrix rho = to_density(s, SupportBasis::occupied(s));
    const Subsystem xy[] = {Subsystem::X, Subsystem::Y};
    const Subsystem xc[] = {Subsystem::X, Subsystem::Coin};
    const Subsystem yc[] = {Subsystem::Y, Subsystem::Coin};

    EntanglementReport r;
    r.n_x_rest = negativity(rho, Subsystem::X);
    r.n_y_rest = negativity(rho, Subsystem::Y);
    r.n_c_rest = negativity(rho, Subsystem::Coin);
    r.n_xy = negativity(partial_trace(rho, xy), Subsystem::X);
    r.n_xc = negativity(partial_trace(rho, xc), Subsystem::X);
    r.n_yc = negativity(partial_trace(rho, yc), Subsystem::Y);

    auto sq = [](double n) { return 4.0 * n * n; };
    r.pi_x = sq(r.n_x_rest) - (sq(r.n_xy) + sq(r.n_xc));
    r.pi_y = sq(r.n_y_rest) - (sq(r.n_yc) + sq(r.n_xy));
    r.pi_c = sq(r.n_c_rest) - (sq(r.n_xc) + sq(r.n_yc));
    r.pi_tangle = (r.pi_x + r.pi_y + r.pi_c) / 3.0;
    return r;
}

double position_negativity(const WalkerState& s) {
    const DensityMatrix rho = to_density(s, SupportBasis::occupied(s));
    const Subsystem xy[] = {Subsystem::X, Subsystem::Y};
    return negativity(partial_trace(rho, xy), Subsystem::X);
}

}  // namespace aqw
