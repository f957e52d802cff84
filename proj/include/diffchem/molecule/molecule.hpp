// Copyright 2026 The diffchem Authors
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
#pragma once

#include "diffchem/autodiff/dual.hpp"
#include "diffchem/error.hpp"
#include "diffchem/molecule/basis_data.hpp"

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

namespace diffchem {

template <class T> using Vec3 = std::array<T, 3>;
using AngularMomentum = std::array<int, 3>;

/// A nucleus. Positions are in bohr.
struct Atom {
    std::string symbol;
    int atomic_number = 1;
    Vec3<double> position{};
};

template <class T> struct GaussianPrimitive {
    T exponent;
    AngularMomentum lmn{};
    Vec3<T> center{};
};

/**
 * Contracted Cartesian Gaussian: a fixed combination of primitives sharing
 * one center and one (l, m, n). `coefficients` are the raw contraction weights
 * from the basis table; normalization is derived from them and the exponents.
 */
template <class T> struct ContractedGaussian {
    AngularMomentum lmn{};
    std::size_t atom = 0;
    Vec3<T> center{};
    std::vector<T> exponents;
    std::vector<T> coefficients;

    [[nodiscard]] std::size_t size() const { return exponents.size(); }
    [[nodiscard]] int total_angular_momentum() const { return lmn[0] + lmn[1] + lmn[2]; }
    [[nodiscard]] GaussianPrimitive<T> primitive(std::size_t i) const {
        return {exponents[i], lmn, center};
    }
};

/// Product of odd integers up to n: n!! for odd n, and 1 for n <= 0.
constexpr double double_factorial(int n) {
    double r = 1.0;
    for (int k = n; k > 1; k -= 2) {
        r *= k;
    }
    return r;
}

/// Normalization constant making a primitive x^l y^m z^n exp(-a r^2) unit-norm.
template <class T> T primitive_norm(const T &exponent, const AngularMomentum &lmn) {
    using std::pow;
    using std::sqrt;
    if (!(ad::primal(exponent) > 0.0)) {
        fail(ErrorKind::Domain, "primitive_norm: exponent must be positive");
    }
    const int l = lmn[0];
    const int m = lmn[1];
    const int n = lmn[2];
    const double df = double_factorial(2 * l - 1) * double_factorial(2 * m - 1) *
                      double_factorial(2 * n - 1);
    const T base = pow(T(2.0) * exponent / std::numbers::pi, 0.75);
    const T ang = pow(T(4.0) * exponent, 0.5 * (l + m + n));
    return base * ang / std::sqrt(df);
}

/**
 * Effective primitive weights N * a_i * n_i of a contracted function, where
 * n_i are primitive norms and N makes the contraction unit-norm.
 */
template <class T> std::vector<T> normalized_weights(const ContractedGaussian<T> &cg) {
    using std::pow;
    using std::sqrt;
    const std::size_t k = cg.size();
    std::vector<T> w(k);
    for (std::size_t i = 0; i < k; ++i) {
        w[i] = cg.coefficients[i] * primitive_norm(cg.exponents[i], cg.lmn);
    }
    const int l = cg.lmn[0];
    const int m = cg.lmn[1];
    const int n = cg.lmn[2];
    const int L = l + m + n;
    const double df = double_factorial(2 * l - 1) * double_factorial(2 * m - 1) *
                      double_factorial(2 * n - 1);
    const double pi32 = std::pow(std::numbers::pi, 1.5);
    T self(0.0);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            const T p = cg.exponents[i] + cg.exponents[j];
            self += w[i] * w[j] * df * pi32 / (pow(T(2.0) * p, double(L)) * pow(p, 1.5));
        }
    }
    const T norm = T(1.0) / sqrt(self);
    for (auto &x : w) {
        x = x * norm;
    }
    return w;
}

/// Normalization factor N of the contraction (the part not in primitive norms).
template <class T> T contraction_normalization(const ContractedGaussian<T> &cg) {
    const auto w = normalized_weights(cg);
    return w[0] / (cg.coefficients[0] * primitive_norm(cg.exponents[0], cg.lmn));
}

template <class T> struct Nucleus {
    int charge = 1;
    Vec3<T> position{};
};

/**
 * Everything the integral and SCF kernels need, over a generic scalar. Built
 * from a Molecule either with constant entries or with some entries replaced
 * by differentiable parameters.
 */
template <class T> struct System {
    std::vector<Nucleus<T>> nuclei;
    std::vector<ContractedGaussian<T>> basis;
    int n_electrons = 0;

    [[nodiscard]] std::size_t n_basis() const { return basis.size(); }
};

struct DiffFlags {
    bool coordinates = false;
    bool exponents = false;
    bool coefficients = false;

    [[nodiscard]] bool any() const { return coordinates || exponents || coefficients; }
};

enum class ParameterKind { Coordinate, Exponent, Coefficient };

/// Where a flat parameter lives: (kind, owner, component). The owner is an
/// atom index for coordinates and a basis-function index otherwise; the
/// component is an axis or a primitive index.
struct ParameterSlot {
    ParameterKind kind = ParameterKind::Coordinate;
    std::size_t owner = 0;
    std::size_t component = 0;

    friend bool operator==(const ParameterSlot &, const ParameterSlot &) = default;
};

struct ParameterVector {
    std::vector<double> values;
    std::vector<ParameterSlot> layout;

    [[nodiscard]] std::size_t size() const { return values.size(); }
};

class Molecule {
  public:
    Molecule(std::vector<Atom> atoms, int charge,
             std::vector<ContractedGaussian<double>> basis, DiffFlags flags);

    [[nodiscard]] const std::vector<Atom> &atoms() const { return atoms_; }
    [[nodiscard]] int charge() const { return charge_; }
    [[nodiscard]] int n_electrons() const { return n_electrons_; }
    [[nodiscard]] const std::vector<ContractedGaussian<double>> &basis() const {
        return basis_;
    }
    [[nodiscard]] std::size_t n_basis() const { return basis_.size(); }
    [[nodiscard]] const DiffFlags &diff_flags() const { return flags_; }

    /// Same molecule with different differentiability flags.
    [[nodiscard]] Molecule with_flags(DiffFlags flags) const;
    /// Same basis assignment with atoms moved; basis centers follow.
    [[nodiscard]] Molecule with_coordinates(std::span<const double> coords) const;

    /// Flat 3N coordinate vector.
    [[nodiscard]] std::vector<double> coordinates() const;

    /// Deterministic layout of the flagged parameters: coordinates (atom, axis),
    /// then exponents (function, primitive), then coefficients.
    [[nodiscard]] std::vector<ParameterSlot> layout() const;

    /// Constant (non-differentiated) system over scalar T.
    template <class T> [[nodiscard]] System<T> system() const;

    /// System whose flagged parameters are taken from `params` (layout order).
    template <class T> [[nodiscard]] System<T> lift(std::span<const T> params) const;

  private:
    std::vector<Atom> atoms_;
    int charge_ = 0;
    int n_electrons_ = 0;
    std::vector<ContractedGaussian<double>> basis_;
    DiffFlags flags_;
};

/// STO-3G contracted functions for an element, centered at the origin.
std::vector<ContractedGaussian<double>> load_sto3g(const std::string &symbol);

/// Contracted functions for an element from an arbitrary library.
std::vector<ContractedGaussian<double>> load_basis(const BasisLibrary &library,
                                                   const std::string &symbol);

/**
 * Builds a closed-shell molecule. Coordinates are flattened (x0, y0, z0, x1, ...)
 * in bohr. Only "sto-3g" is built in; pass a library to use another table.
 */
Molecule build_molecule(const std::vector<std::string> &symbols,
                        std::span<const double> coordinates, int charge,
                        const std::string &basis_name = "sto-3g", DiffFlags flags = {},
                        const BasisLibrary *library = nullptr);

ParameterVector pack_parameters(const Molecule &molecule);
Molecule unpack_parameters(const Molecule &molecule, const ParameterVector &vector);
Molecule unpack_parameters(const Molecule &molecule, std::span<const double> values);

// Template definitions.

template <class T> System<T> Molecule::system() const {
    System<T> sys;
    sys.n_electrons = n_electrons_;
    for (const auto &a : atoms_) {
        sys.nuclei.push_back(
            {a.atomic_number, {T(a.position[0]), T(a.position[1]), T(a.position[2])}});
    }
    for (const auto &bf : basis_) {
        ContractedGaussian<T> g;
        g.lmn = bf.lmn;
        g.atom = bf.atom;
        g.center = sys.nuclei[bf.atom].position;
        for (std::size_t i = 0; i < bf.size(); ++i) {
            g.exponents.push_back(T(bf.exponents[i]));
            g.coefficients.push_back(T(bf.coefficients[i]));
        }
        sys.basis.push_back(std::move(g));
    }
    return sys;
}

template <class T> System<T> Molecule::lift(std::span<const T> params) const {
    const auto slots = layout();
    if (params.size() != slots.size()) {
        fail(ErrorKind::Layout, "parameter vector has length " + std::to_string(params.size()) +
                                    ", layout expects " + std::to_string(slots.size()));
    }
    System<T> sys = system<T>();
    for (std::size_t k = 0; k < slots.size(); ++k) {
        const auto &s = slots[k];
        switch (s.kind) {
        case ParameterKind::Coordinate:
            sys.nuclei[s.owner].position[s.component] = params[k];
            break;
        case ParameterKind::Exponent:
            sys.basis[s.owner].exponents[s.component] = params[k];
            break;
        case ParameterKind::Coefficient:
            sys.basis[s.owner].coefficients[s.component] = params[k];
            break;
        }
    }
    for (auto &g : sys.basis) {
        g.center = sys.nuclei[g.atom].position;
    }
    return sys;
}

} // namespace diffchem
