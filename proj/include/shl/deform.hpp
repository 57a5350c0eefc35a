#pragma once

// First-order deformations Q_L + h Q_+ (h^2 = 0) compatible with A and B, gauge maps
// sigma = 1 + h lambda, deformed Atiyah cocycles and the witness W = [Psi_1, D^E].

#include "shl/atiyah.hpp"

#include <map>
#include <random>
#include <stdexcept>
#include <string>

namespace shl {

struct GaugeCheckFailed : std::runtime_error {
	using std::runtime_error::runtime_error;
};

// Q_+ on the alphabet L^vee of the pair
struct Deformation {
	std::string name;
	Derivation<Q> q_plus;
};

// Psi_k: A^vee -> O(A) (x) S^k(B^vee), degree 0, zero on B^vee
struct GaugeMap {
	std::string name;
	std::map<int, Derivation<Q>> psi;

	Derivation<Q> lambda() const;
	Derivation<Q> psi1() const;
};

struct DeformationParts {
	Derivation<Q> delta, r; // A^vee -> O(A) (x) B^vee, A^vee -> O(A) (x) S^{>=2} B^vee
	std::map<int, Derivation<Q>> t; // B^vee -> O(A) (x) S^i B^vee
};
DeformationParts decompose_plus(const SHLiePair& p, const Deformation& d);

Derivation<QH> deformed_q(const SHLiePair& p, const Deformation& d);

// both containments per generator and [Q_L, Q_+] = 0, the latter also as Q(h)^2 = 0 over dual numbers
Report check_compatible(const SHLiePair& p, const Deformation& d);
Report check_gauge_map(const SHLiePair& p, const GaugeMap& g);
// Q_+ - Qbar_+ = [Q_L, lambda]; residuals are listed per generator
Report check_gauge(const SHLiePair& p, const Deformation& d1, const Deformation& d2, const GaugeMap& g);

Deformation inner_deformation(const SHLiePair& p, const GaugeMap& g, const std::string& name = "inner");
// [Q_L, E_B] with E_B the weight derivation on B^vee: compatible, and not inner in general
Deformation weight_deformation(const SHLiePair& p, const std::string& name = "weight");

struct DeformedAtiyah {
	AtiyahData data;
	Op<Q> body, soul;
	Op<QH> cocycle; // body + h soul
	Report rep;
};
// soul = delta_+ applied to D^{A,E}, the h-part of [d_A, delta + h delta_+]
DeformedAtiyah deformed_atiyah(const SHLiePair& p, const Module<Q>& e, const Deformation& d);

struct GaugeWitness {
	Op<Q> w;        // [Psi_1, D^E]
	Op<Q> dw;       // d_A W
	Op<Q> difference; // soul - soulbar
	Report rep;
};
// throws GaugeCheckFailed when (d1, d2, g) is not a gauge equivalence
GaugeWitness verify_gauge_invariance(const SHLiePair& p, const Module<Q>& e, const Deformation& d1,
	const Deformation& d2, const GaugeMap& g);

// the complex of A[h] with coefficients B^vee (x) End E over dual numbers splits into two copies
Report dual_cohomology_check(const SHLiePair& p, const Module<Q>& e, int degree, int max_weight);

GaugeMap random_gauge_map(std::mt19937& rng, const SHLiePair& p, int kmax = 2, int terms = 2);

} // namespace shl
