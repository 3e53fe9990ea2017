// Copyright 2026 The noisetol Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Haar-random two-qubit unitaries and an exact decomposition of arbitrary
 * two-qubit unitaries into {U1Q, RY, RZ, CX} via a cosine-sine split and two
 * demultiplexing steps (16 gates, 6 CX).
 */
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "circuit.hpp"
#include "error.hpp"
#include "random.hpp"

namespace noisetol {

namespace detail {

using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;

inline Mat4 to_eigen4(const std::vector<Complex> &m) {
    Mat4 out;
    for (Eigen::Index r = 0; r < 4; ++r) {
        for (Eigen::Index c = 0; c < 4; ++c) {
            out(r, c) = m[static_cast<std::size_t>(r * 4 + c)];
        }
    }
    return out;
}

inline std::vector<Complex> from_eigen(const Eigen::MatrixXcd &m) {
    std::vector<Complex> out(static_cast<std::size_t>(m.size()));
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            out[static_cast<std::size_t>(r * m.cols() + c)] = m(r, c);
        }
    }
    return out;
}

struct Demultiplexed {
    Mat2 first;  // W, applied first
    Mat2 last;   // V
    double alpha = 0.0;
    double beta = 0.0;
};

// diag(x1, x2) = (I (x) V) (D (+) D^dagger) (I (x) W)
inline Demultiplexed demultiplex(const Mat2 &x1, const Mat2 &x2) {
    const Mat2 product = x1 * x2.adjoint();
    Eigen::ComplexSchur<Mat2> schur(product);
    const Mat2 v = schur.matrixU();
    const Mat2 t = schur.matrixT();
    const double phi0 = std::arg(t(0, 0)) / 2.0;
    const double phi1 = std::arg(t(1, 1)) / 2.0;
    Mat2 d = Mat2::Zero();
    d(0, 0) = std::polar(1.0, phi0);
    d(1, 1) = std::polar(1.0, phi1);
    Demultiplexed out;
    out.last = v;
    out.first = d * v.adjoint() * x2;
    out.alpha = (phi0 + phi1) / 2.0;
    out.beta = (phi0 - phi1) / 2.0;
    return out;
}

inline void emit_demultiplexed(std::vector<Gate> &out, const Demultiplexed &d,
                               std::size_t a, std::size_t b) {
    out.push_back(Gate::unitary1(a, from_eigen(d.first)));
    out.push_back(Gate::rz(b, -2.0 * d.alpha));
    out.push_back(Gate::cx(b, a));
    out.push_back(Gate::rz(a, -2.0 * d.beta));
    out.push_back(Gate::cx(b, a));
    out.push_back(Gate::unitary1(a, from_eigen(d.last)));
}

} // namespace detail

/// Haar-distributed 4x4 unitary (QR of a complex Ginibre matrix with the
/// R-diagonal phases folded back into Q).
[[nodiscard]] inline std::vector<Complex> haar_unitary4(Rng &rng) {
    detail::Mat4 z;
    for (Eigen::Index r = 0; r < 4; ++r) {
        for (Eigen::Index c = 0; c < 4; ++c) {
            const double re = rng.normal();
            const double im = rng.normal();
            z(r, c) = Complex(re, im) / std::sqrt(2.0);
        }
    }
    Eigen::HouseholderQR<detail::Mat4> qr(z);
    detail::Mat4 q = qr.householderQ();
    const detail::Mat4 rmat = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < 4; ++j) {
        const Complex rjj = rmat(j, j);
        const double mag = std::abs(rjj);
        q.col(j) *= mag > 0.0 ? rjj / mag : Complex(1.0);
    }
    return detail::from_eigen(q);
}

/**
 * Gate sequence equal (up to global phase) to a U2Q gate. The 4x4 matrix is
 * split as diag(A1, A2) . [[C, -S], [S, C]] . diag(B1, B2) on the second
 * operand; the block-diagonal factors become controlled demultiplexers and the
 * middle factor a multiplexed RY.
 */
[[nodiscard]] inline std::vector<Gate> decompose_two_qubit(const Gate &gate) {
    if (gate.kind != GateKind::U2Q || gate.matrix.size() != 16) {
        throw InvalidArgument("decompose_two_qubit expects a U2Q gate");
    }
    using detail::Mat2;
    const auto u = detail::to_eigen4(gate.matrix);
    const Mat2 u00 = u.block<2, 2>(0, 0);
    const Mat2 u01 = u.block<2, 2>(0, 2);
    const Mat2 u10 = u.block<2, 2>(2, 0);
    const Mat2 u11 = u.block<2, 2>(2, 2);

    Eigen::JacobiSVD<Mat2> svd(u00, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Mat2 a1 = svd.matrixU();
    const Mat2 b1 = svd.matrixV().adjoint();
    std::array<double, 2> c{std::min(1.0, svd.singularValues()(0)),
                            std::min(1.0, svd.singularValues()(1))};
    std::array<double, 2> s{std::sqrt(std::max(0.0, 1.0 - c[0] * c[0])),
                            std::sqrt(std::max(0.0, 1.0 - c[1] * c[1]))};

    // A2 columns from U10 B1^dagger = A2 S where S is well conditioned
    constexpr double kTiny = 1e-7;
    const Mat2 m = u10 * svd.matrixV();
    Mat2 a2 = Mat2::Identity();
    const bool known0 = s[0] > kTiny;
    const bool known1 = s[1] > kTiny;
    if (known0) {
        a2.col(0) = m.col(0) / s[0];
    }
    if (known1) {
        a2.col(1) = m.col(1) / s[1];
    }
    if (known0 && !known1) {
        a2(0, 1) = -std::conj(a2(1, 0));
        a2(1, 1) = std::conj(a2(0, 0));
    } else if (!known0 && known1) {
        a2(0, 0) = std::conj(a2(1, 1));
        a2(1, 0) = -std::conj(a2(0, 1));
    }

    Mat2 b2;
    const Mat2 from_u11 = a2.adjoint() * u11;
    const Mat2 from_u01 = -(a1.adjoint() * u01);
    for (Eigen::Index i = 0; i < 2; ++i) {
        const auto k = static_cast<std::size_t>(i);
        if (c[k] >= s[k]) {
            b2.row(i) = from_u11.row(i) / c[k];
        } else {
            b2.row(i) = from_u01.row(i) / s[k];
        }
    }

    const std::size_t qa = gate.qubits[0];
    const std::size_t qb = gate.qubits[1];
    std::vector<Gate> out;
    out.reserve(16);
    detail::emit_demultiplexed(out, detail::demultiplex(b1, b2), qa, qb);
    const double theta0 = std::atan2(s[0], c[0]);
    const double theta1 = std::atan2(s[1], c[1]);
    out.push_back(Gate::ry(qb, theta0 + theta1));
    out.push_back(Gate::cx(qa, qb));
    out.push_back(Gate::ry(qb, theta0 - theta1));
    out.push_back(Gate::cx(qa, qb));
    detail::emit_demultiplexed(out, detail::demultiplex(a1, a2), qa, qb);
    return out;
}

} // namespace noisetol
