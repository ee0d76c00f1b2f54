#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "aqw/walker.hpp"

namespace aqw {

enum class Subsystem { X, Y, Coin };

/// Position levels that span a density matrix's x and y factors. Every
/// nonzero amplitude of the state must sit on a listed (x, y).
struct SupportBasis {
    std::vector<int> xs;
    std::vector<int> ys;

    /// Contiguous box [xmin, xmax] x [ymin, ymax].
    [[nodiscard]] static SupportBasis box(int xmin, int xmax, int ymin, int ymax);
    /// The (2t+1) x (2t+1) light-cone box around (l, k).
    [[nodiscard]] static SupportBasis light_cone(int steps, int l = 0, int k = 0);
    /// Only the x and y values that actually carry amplitude. Dropping empty
    /// levels is a local isometry, so every negativity is unchanged.
    [[nodiscard]] static SupportBasis occupied(const WalkerState& s);
};

/// Hermitian, unit-trace operator over an ordered product of subsystems.
/// The first label is the most significant index.
class DensityMatrix {
public:
    DensityMatrix(std::vector<Subsystem> labels, std::vector<int> dims, Eigen::MatrixXcd data);

    [[nodiscard]] const std::vector<Subsystem>& labels() const { return labels_; }
    [[nodiscard]] const std::vector<int>& dims() const { return dims_; }
    [[nodiscard]] const Eigen::MatrixXcd& data() const { return data_; }
    [[nodiscard]] Eigen::Index dim() const { return data_.rows(); }

    /// Position of `s` in labels(); throws BadSubsystemSet when absent.
    [[nodiscard]] std::size_t slot(Subsystem s) const;

private:
    std::vector<Subsystem> labels_;
    std::vector<int> dims_;
    Eigen::MatrixXcd data_;
};

/// |psi><psi| with subsystem order x (x) y (x) c. Throws SupportTooSmall when
/// the basis misses a nonzero amplitude.
[[nodiscard]] DensityMatrix to_density(const WalkerState& s, const SupportBasis& basis);

/// Traces out every subsystem not listed in `keep`; the kept subsystems retain
/// their original order.
[[nodiscard]] DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const Subsystem> keep);

[[nodiscard]] Eigen::MatrixXcd partial_transpose(const DensityMatrix& rho, Subsystem which);

/// Sum of |lambda| for a Hermitian matrix.
[[nodiscard]] double trace_norm(const Eigen::MatrixXcd& hermitian);

/// (||rho^{T_which}|| - 1) / 2, i.e. the summed magnitude of the negative
/// eigenvalues of the partial transpose. Round-off below 1e-10 is clamped to
/// zero; anything more negative raises NumericalInstability.
[[nodiscard]] double negativity(const DensityMatrix& rho, Subsystem which);

/// Negativities of a pure walker state and the tripartite pi-tangle.
///
/// The n_* fields use the (||rho^T|| - 1)/2 convention. The pi-tangle is
/// assembled from the monotone's own convention ||rho^T|| - 1 = 2N:
///
///     pi_x = (2 N_{x|yc})^2 - (2 N_xy)^2 - (2 N_xc)^2     (cyclic in x, y, c)
///     pi_tangle = (pi_x + pi_y + pi_c) / 3
///
/// so a three-qubit GHZ state has pi_tangle = 1.
struct EntanglementReport {
    double n_xy = 0.0;
    double n_xc = 0.0;
    double n_yc = 0.0;
    double n_x_rest = 0.0;
    double n_y_rest = 0.0;
    double n_c_rest = 0.0;
    double pi_x = 0.0;
    double pi_y = 0.0;
    double pi_c = 0.0;
    double pi_tangle = 0.0;

    /// pi-tangle recomputed from the stored negativities.
    [[nodiscard]] double recomputed_pi_tangle() const;
};

[[nodiscard]] EntanglementReport entanglement_report(const WalkerState& s);

/// N_xy of the coin-traced state; cheaper than a full report.
[[nodiscard]] double position_negativity(const WalkerState& s);

}  // namespace aqw
