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

#include "cascade/fock.hpp"

#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

#include "cascade/errors.hpp"
#include "cascade/gaussian.hpp"
#include "cascade/meq.hpp"

namespace cascade::fock {

namespace {

using std::complex;
constexpr complex<double> kI{0.0, 1.0};
constexpr double kInvSqrt2 = 0.7071067811865475244;

SparseC sparse_identity(Eigen::Index d) {
    SparseC eye(d, d);
    eye.setIdentity();
    return eye;
}

SparseC annihilation(int d) {
    SparseC b(d, d);
    for (int n = 0; n < d - 1; ++n) {
        b.insert(n, n + 1) = std::sqrt(static_cast<double>(n + 1));
    }
    b.makeCompressed();
    return b;
}

/// Embeds a single-mode operator at mode index `which` (mode 0 outermost).
SparseC embed(const SparseC& op, const std::vector<int>& dims, std::size_t which) {
    SparseC full(1, 1);
    full.insert(0, 0) = 1.0;
    for (std::size_t m = 0; m < dims.size(); ++m) {
        const SparseC factor =
            (m == which) ? op : sparse_identity(static_cast<Eigen::Index>(dims[m]));
        full = Eigen::kroneckerProduct(full, factor).eval();
    }
    full.makeCompressed();
    return full;
}

SparseC scaled(SparseC m, complex<double> factor) {
    m *= factor;
    return m;
}

void check_config(const InteractionChain& chain, const FockConfig& cfg) {
    if (cfg.dims.size() != chain.systems.size())
        throw ChainError("fock: need one truncation dimension per system");
    long total = 1;
    for (int d : cfg.dims) {
        if (d < 2) throw ChainError("fock: truncation dimension must be >= 2");
        total *= d;
    }
    if (total > 4096) throw ChainError("fock: total dimension above 4096");
}

} // namespace

LindbladGenerator build_generator(const InteractionChain& chain, const FockConfig& cfg) {
    check_config(chain, cfg);
    const std::size_t n_modes = chain.systems.size();

    LindbladGenerator gen;
    std::vector<SparseC> b_ops(n_modes), bdag_ops(n_modes);
    for (std::size_t i = 0; i < n_modes; ++i) {
        b_ops[i] = embed(annihilation(cfg.dims[i]), cfg.dims, i);
        bdag_ops[i] = SparseC(b_ops[i].adjoint());
    }
    gen.dim = b_ops[0].rows();

    gen.quadratures.resize(2 * n_modes);
    for (std::size_t i = 0; i < n_modes; ++i) {
        gen.quadratures[2 * i] = scaled(SparseC(b_ops[i] + bdag_ops[i]), kInvSqrt2);
        gen.quadratures[2 * i + 1] =
            scaled(SparseC(b_ops[i] - bdag_ops[i]), -kI * kInvSqrt2);
    }

    // H = sum_i Omega_i b_i^dag b_i + (1/2) sum_ij R_ij Q_i Q_j
    SparseC h(gen.dim, gen.dim);
    for (std::size_t i = 0; i < n_modes; ++i) {
        h += scaled(SparseC(bdag_ops[i] * b_ops[i]), chain.systems[i].omega);
    }
    const auto parts = split_hamiltonian_dissipator(quadrature_matrix(chain));
    for (Eigen::Index i = 0; i < parts.R.rows(); ++i) {
        for (Eigen::Index j = 0; j < parts.R.cols(); ++j) {
            if (std::abs(parts.R(i, j)) < 1e-15) continue;
            h += scaled(SparseC(gen.quadratures[i] * gen.quadratures[j]),
                        0.5 * parts.R(i, j));
        }
    }
    h.makeCompressed();
    gen.hamiltonian = h;

    gen.dissipator = parts.L;

    // Light-induced collapse channels from the dissipator's eigendecomposition.
    for (const auto& jump : jump_operators(parts.L)) {
        if (jump.rate <= 1e-14) continue;
        SparseC c(gen.dim, gen.dim);
        for (Eigen::Index m = 0; m < jump.coeffs.size(); ++m) {
            if (std::abs(jump.coeffs(m)) < 1e-15) continue;
            c += scaled(gen.quadratures[m], std::conj(jump.coeffs(m)));
        }
        c = scaled(c, std::sqrt(jump.rate));
        c.makeCompressed();
        gen.light_collapse.push_back(c);
    }

    // Local thermal baths.
    for (std::size_t i = 0; i < n_modes; ++i) {
        const auto& s = chain.systems[i];
        if (s.gamma <= 0.0) continue;
        gen.local_collapse.push_back(scaled(b_ops[i], std::sqrt(s.gamma * (s.nbar + 1.0))));
        if (s.nbar > 0.0)
            gen.local_collapse.push_back(scaled(bdag_ops[i], std::sqrt(s.gamma * s.nbar)));
    }

    gen.top_projectors.resize(n_modes);
    for (std::size_t i = 0; i < n_modes; ++i) {
        SparseC proj(cfg.dims[i], cfg.dims[i]);
        proj.insert(cfg.dims[i] - 1, cfg.dims[i] - 1) = 1.0;
        gen.top_projectors[i] = embed(proj, cfg.dims, i);
    }
    return gen;
}

Eigen::MatrixXcd lindblad_rhs(const LindbladGenerator& gen, const Eigen::MatrixXcd& rho) {
    const Eigen::MatrixXcd h_rho = gen.hamiltonian * rho;
    const Eigen::MatrixXcd rho_h = rho * gen.hamiltonian;
    Eigen::MatrixXcd drho = -kI * (h_rho - rho_h);
    for (const auto* group : {&gen.light_collapse, &gen.local_collapse}) {
        for (const auto& c : *group) {
            const SparseC cdag = SparseC(c.adjoint());
            const SparseC cdc = SparseC(cdag * c);
            const Eigen::MatrixXcd c_rho = c * rho;
            drho += c_rho * cdag - 0.5 * (cdc * rho + rho * cdc);
        }
    }
    return drho;
}

SparseC liouvillian(const LindbladGenerator& gen) {
    const SparseC eye = sparse_identity(gen.dim);
    // Column-major vec: vec(A rho B) = (B^T kron A) vec(rho).
    SparseC l =
        Eigen::kroneckerProduct(eye, scaled(gen.hamiltonian, -kI)).eval();
    l += Eigen::kroneckerProduct(scaled(SparseC(gen.hamiltonian.transpose()), kI), eye)
             .eval();

    // Light-induced dissipator assembled pairwise over quadratures rather than
    // through the (denser) eigendecomposed jump channels:
    //   drho = -sum_ij L_ij/2 (Q_i Q_j rho + rho Q_i Q_j - 2 Q_j rho Q_i).
    if (gen.dissipator.size() > 0 && gen.dissipator.cwiseAbs().maxCoeff() > 0.0) {
        SparseC lambda(gen.dim, gen.dim);
        for (Eigen::Index i = 0; i < gen.dissipator.rows(); ++i) {
            for (Eigen::Index j = 0; j < gen.dissipator.cols(); ++j) {
                const auto lij = gen.dissipator(i, j);
                if (std::abs(lij) < 1e-15) continue;
                l += Eigen::kroneckerProduct(
                         scaled(SparseC(gen.quadratures[i].transpose()), lij),
                         gen.quadratures[j])
                         .eval();
                lambda += scaled(SparseC(gen.quadratures[i] * gen.quadratures[j]), lij);
            }
        }
        l -= Eigen::kroneckerProduct(eye, scaled(lambda, 0.5)).eval();
        l -= Eigen::kroneckerProduct(scaled(SparseC(lambda.transpose()), 0.5), eye).eval();
    }

    for (const auto& c : gen.local_collapse) {
        const SparseC cdc = SparseC(SparseC(c.adjoint()) * c);
        l += Eigen::kroneckerProduct(SparseC(c.conjugate()), c).eval();
        l -= Eigen::kroneckerProduct(eye, scaled(cdc, 0.5)).eval();
        l -= Eigen::kroneckerProduct(scaled(SparseC(cdc.transpose()), 0.5), eye).eval();
    }
    l.makeCompressed();
    return l;
}

Eigen::MatrixXcd thermal_density(const std::vector<SystemSpec>& systems,
                                 const std::vector<int>& dims) {
    if (systems.size() != dims.size())
        throw ChainError("thermal_density: need one dimension per system");
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Identity(1, 1);
    for (std::size_t i = 0; i < systems.size(); ++i) {
        const int d = dims[i];
        Eigen::VectorXd pops(d);
        const double nbar = systems[i].nbar;
        if (nbar <= 0.0) {
            pops.setZero();
            pops(0) = 1.0;
        } else {
            const double x = nbar / (nbar + 1.0);
            for (int n = 0; n < d; ++n) pops(n) = std::pow(x, n);
            pops /= pops.sum();
        }
        const Eigen::MatrixXcd mode = pops.cast<complex<double>>().asDiagonal();
        rho = Eigen::kroneckerProduct(rho, mode).eval();
    }
    return rho;
}

namespace {

std::complex<double> trace_product(const SparseC& a, const Eigen::MatrixXcd& b) {
    std::complex<double> tr = 0.0;
    for (Eigen::Index col = 0; col < a.outerSize(); ++col) {
        for (SparseC::InnerIterator it(a, col); it; ++it) {
            tr += it.value() * b(col, it.row());
        }
    }
    return tr;
}

} // namespace

Eigen::MatrixXd covariance_from_density(const LindbladGenerator& gen,
                                        const Eigen::MatrixXcd& rho) {
    const auto n_quad = static_cast<Eigen::Index>(gen.quadratures.size());
    std::vector<Eigen::MatrixXcd> q_rho(n_quad);
    Eigen::VectorXd means(n_quad);
    for (Eigen::Index k = 0; k < n_quad; ++k) {
        q_rho[k] = gen.quadratures[k] * rho;
        means(k) = std::real(q_rho[k].trace());
    }
    Eigen::MatrixXd c(n_quad, n_quad);
    for (Eigen::Index k = 0; k < n_quad; ++k) {
        for (Eigen::Index l = k; l < n_quad; ++l) {
            const double sym = 0.5 * std::real(trace_product(gen.quadratures[k], q_rho[l]) +
                                               trace_product(gen.quadratures[l], q_rho[k]));
            c(k, l) = c(l, k) = sym - means(k) * means(l);
        }
    }
    return c;
}

namespace {

double operator_scale(const LindbladGenerator& gen) {
    // Gershgorin-style bound: largest absolute column sum of H plus the
    // collapse strengths; sets the stiff scale for the fixed-step integrator.
    double scale = 0.0;
    for (Eigen::Index col = 0; col < gen.hamiltonian.outerSize(); ++col) {
        double sum = 0.0;
        for (SparseC::InnerIterator it(gen.hamiltonian, col); it; ++it) {
            sum += std::abs(it.value());
        }
        scale = std::max(scale, sum);
    }
    double rates = 0.0;
    for (const auto* group : {&gen.light_collapse, &gen.local_collapse}) {
        for (const auto& c : *group) rates += c.squaredNorm();
    }
    return std::max(scale + rates, 1e-12);
}

} // namespace

OracleResult oracle_covariance(const InteractionChain& chain, const FockConfig& cfg,
                               const std::vector<double>& t_grid) {
    if (t_grid.empty()) throw ChainError("oracle_covariance: empty time grid");
    const LindbladGenerator gen = build_generator(chain, cfg);
    const SparseC liou = liouvillian(gen);

    Eigen::MatrixXcd rho = thermal_density(chain.systems, cfg.dims);
    Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(rho.data(), rho.size());

    // The bound tracks the fastest (top-level) phases, which only need to stay
    // inside the stability region; the populated low levels are integrated with
    // phase steps well below 0.1 rad.
    const double dt = cfg.dt > 0.0 ? cfg.dt : 0.35 / operator_scale(gen);

    OracleResult result;
    double t = 0.0;
    Eigen::VectorXcd k1(v.size()), k2(v.size()), k3(v.size()), k4(v.size());
    for (double target : t_grid) {
        const double span = target - t;
        if (span < 0.0) throw ChainError("oracle_covariance: time grid must increase");
        if (span > 0.0) {
            const auto steps = static_cast<long>(std::ceil(span / dt - 1e-12));
            const double h = span / static_cast<double>(steps);
            for (long s = 0; s < steps; ++s) {
                k1.noalias() = liou * v;
                k2.noalias() = liou * (v + 0.5 * h * k1);
                k3.noalias() = liou * (v + 0.5 * h * k2);
                k4.noalias() = liou * (v + h * k3);
                v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            }
            t = target;
        }
        rho = Eigen::Map<const Eigen::MatrixXcd>(v.data(), gen.dim, gen.dim);
        rho = 0.5 * (rho + rho.adjoint().eval());
        for (const auto& proj : gen.top_projectors) {
            const double pop = std::real(trace_product(proj, rho));
            result.max_top_population = std::max(result.max_top_population, pop);
        }
        if (result.max_top_population > cfg.leak_tol)
            throw NumericalError("truncation leak: top-level population " +
                                 std::to_string(result.max_top_population));
        result.covariances.push_back(covariance_from_density(gen, rho));
    }
    return result;
}

OracleReport oracle_compare(const InteractionChain& chain, const FockConfig& cfg,
                            const std::vector<double>& t_grid, double tol) {
    const OracleResult oracle = oracle_covariance(chain, cfg, t_grid);

    // The Gaussian path starts from the same initial moments, i.e. those of
    // the truncated thermal state.
    const LindbladGenerator gen = build_generator(chain, cfg);
    const Eigen::MatrixXd c0 =
        covariance_from_density(gen, thermal_density(chain.systems, cfg.dims));
    const auto fd = drift_diffusion(chain);
    const auto gaussian_path = evolve(fd, c0, t_grid);

    OracleReport report;
    report.max_top_population = oracle.max_top_population;
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        const double dev =
            (oracle.covariances[i] - gaussian_path[i]).cwiseAbs().maxCoeff();
        report.max_abs_deviation = std::max(report.max_abs_deviation, dev);
    }
    report.pass = report.max_abs_deviation <= tol;
    return report;
}

} // namespace cascade::fock
