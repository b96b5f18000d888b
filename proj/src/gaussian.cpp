// Copyright 2026 The Cascade Authors
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

#include "cascade/gaussian.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "cascade/errors.hpp"
#include "cascade/meq.hpp"

namespace cascade {

Eigen::MatrixXd symplectic_form(std::size_t n_modes) {
    const auto dim = static_cast<Eigen::Index>(2 * n_modes);
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; i += 2) {
        j(i, i + 1) = 1.0;
        j(i + 1, i) = -1.0;
    }
    return j;
}

DriftDiffusion drift_diffusion(const std::vector<SystemSpec>& systems,
                               const Eigen::MatrixXcd& atilde) {
    const auto dim = static_cast<Eigen::Index>(2 * systems.size());
    if (atilde.rows() != dim || atilde.cols() != dim)
        throw ChainError("drift_diffusion: matrix size does not match system count");

    const Eigen::MatrixXd j = symplectic_form(systems.size());
    DriftDiffusion fd;
    fd.F = 2.0 * j * atilde.imag();
    fd.N = j * (atilde.real() + atilde.real().transpose()) * j.transpose();

    for (std::size_t i = 0; i < systems.size(); ++i) {
        const auto s = static_cast<Eigen::Index>(2 * i);
        const double gamma = systems[i].gamma;
        const double gamma_th = gamma * (systems[i].nbar + 0.5);
        fd.F(s, s) += -0.5 * gamma;
        fd.F(s + 1, s + 1) += -0.5 * gamma;
        fd.F(s, s + 1) += systems[i].omega;
        fd.F(s + 1, s) += -systems[i].omega;
        fd.N(s, s) += gamma_th;
        fd.N(s + 1, s + 1) += gamma_th;
    }
    return fd;
}

DriftDiffusion drift_diffusion(const InteractionChain& chain) {
    return drift_diffusion(chain.systems, quadrature_matrix(chain));
}

Eigen::MatrixXd thermal_state(const std::vector<SystemSpec>& systems) {
    const auto dim = static_cast<Eigen::Index>(2 * systems.size());
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(dim, dim);
    for (std::size_t i = 0; i < systems.size(); ++i) {
        const double var = systems[i].nbar + 0.5;
        c(2 * i, 2 * i) = var;
        c(2 * i + 1, 2 * i + 1) = var;
    }
    return c;
}

double physicality_margin(const Eigen::MatrixXd& c) {
    const Eigen::MatrixXcd j = symplectic_form(c.rows() / 2).cast<std::complex<double>>();
    const Eigen::MatrixXcd m =
        c.cast<std::complex<double>>() + std::complex<double>(0.0, 0.5) * j;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

namespace {

double auto_step(const DriftDiffusion& fd) {
    double scale = std::max(fd.F.cwiseAbs().maxCoeff(), 1e-12);
    return 0.01 / scale;
}

inline Eigen::MatrixXd rhs(const DriftDiffusion& fd, const Eigen::MatrixXd& c) {
    Eigen::MatrixXd fc = fd.F * c;
    return fc + fc.transpose() + fd.N;
}

void rk4_advance(const DriftDiffusion& fd, Eigen::MatrixXd& c, double h) {
    const Eigen::MatrixXd k1 = rhs(fd, c);
    const Eigen::MatrixXd k2 = rhs(fd, c + 0.5 * h * k1);
    const Eigen::MatrixXd k3 = rhs(fd, c + 0.5 * h * k2);
    const Eigen::MatrixXd k4 = rhs(fd, c + h * k3);
    c += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

} // namespace

std::vector<Eigen::MatrixXd> evolve(const DriftDiffusion& fd, const Eigen::MatrixXd& c0,
                                    const std::vector<double>& t_grid,
                                    const EvolveOptions& opts) {
    if (t_grid.empty()) throw ChainError("evolve: empty time grid");
    if (t_grid.front() < 0.0) throw ChainError("evolve: times must be >= 0");
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        if (!(t_grid[i] > t_grid[i - 1]))
            throw ChainError("evolve: time grid must be strictly increasing");
    }
    const double dt = opts.dt > 0.0 ? opts.dt : auto_step(fd);

    std::vector<Eigen::MatrixXd> out;
    out.reserve(t_grid.size());
    Eigen::MatrixXd c = 0.5 * (c0 + c0.transpose());
    double t = 0.0;
    for (double target : t_grid) {
        const double span = target - t;
        if (span > 0.0) {
            const auto steps = static_cast<long>(std::ceil(span / dt - 1e-12));
            const double h = span / static_cast<double>(steps);
            for (long s = 0; s < steps; ++s) rk4_advance(fd, c, h);
            t = target;
        }
        c = 0.5 * (c + c.transpose());
        if (opts.check_physical && physicality_margin(c) < -opts.physical_tol)
            throw NumericalError(
                "evolve: covariance became non-physical at t = " + std::to_string(target) +
                "; reduce the step size");
        out.push_back(c);
    }
    return out;
}

double spectral_abscissa(const Eigen::MatrixXd& f) {
    Eigen::EigenSolver<Eigen::MatrixXd> solver(f, false);
    return solver.eigenvalues().real().maxCoeff();
}

bool is_hurwitz(const Eigen::MatrixXd& f) { return spectral_abscissa(f) < 0.0; }

Eigen::MatrixXd steady_state(const DriftDiffusion& fd) {
    const double abscissa = spectral_abscissa(fd.F);
    if (!(abscissa < 0.0))
        throw NumericalError("unstable dynamics: drift eigenvalue with real part " +
                             std::to_string(abscissa));
    const Eigen::Index dim = fd.F.rows();
    const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(dim, dim);

    // vec(F C + C F^T) = (I (x) F + F (x) I) vec(C)
    Eigen::MatrixXd big = Eigen::MatrixXd::Zero(dim * dim, dim * dim);
    for (Eigen::Index a = 0; a < dim; ++a) {
        for (Eigen::Index b = 0; b < dim; ++b) {
            big.block(a * dim, b * dim, dim, dim) = eye(a, b) * fd.F + fd.F(a, b) * eye;
        }
    }
    const auto lu = big.partialPivLu();
    const Eigen::VectorXd rhs = -Eigen::Map<const Eigen::VectorXd>(fd.N.data(), dim * dim);
    Eigen::VectorXd sol = lu.solve(rhs);
    // one step of iterative refinement for stiff rate hierarchies
    sol += lu.solve(rhs - big * sol);
    Eigen::MatrixXd c = Eigen::Map<const Eigen::MatrixXd>(sol.data(), dim, dim);
    c = 0.5 * (c + c.transpose());

    const double residual = (fd.F * c + c * fd.F.transpose() + fd.N).norm();
    const double scale =
        std::max({fd.N.norm(), 2.0 * fd.F.norm() * c.norm(), 1e-300});
    if (residual > 1e-10 * scale)
        throw NumericalError("steady_state: Lyapunov residual " + std::to_string(residual));
    return c;
}

std::vector<double> phonon_numbers(const Eigen::MatrixXd& c) {
    std::vector<double> n(c.rows() / 2);
    for (std::size_t i = 0; i < n.size(); ++i) {
        n[i] = 0.5 * (c(2 * i, 2 * i) + c(2 * i + 1, 2 * i + 1) - 1.0);
    }
    return n;
}

} // namespace cascade
