#pragma once

// L-connections extending (A, E), curvature, Atiyah cocycles by three routes,
// independence of the connection, vanishing of the class and the connecting map.

#include "shl/complex.hpp"
#include "shl/shlie.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace shl {

struct ExtensionMismatch : std::runtime_error {
	using std::runtime_error::runtime_error;
};

// Q_L + D^{L,E} packaged as a (possibly curved) module over L: alphabet [L^vee, E].
struct Connection {
	Module<Q> m;
};

Connection trivial_connection(const SHLiePair& p, const Module<Q>& e);
// D^{L,E} = D^{A,E} + extra, extra given on E generators over [L^vee, E]
Connection perturbed_connection(const SHLiePair& p, const Module<Q>& e, const std::map<int, Poly<Q>>& extra);
void require_extends(const SHLiePair& p, const Module<Q>& e, const Connection& c);

// R(e) = nabla^2(e) over [L^vee, E]
std::map<int, Poly<Q>> curvature(const Connection& c);
Report bianchi(const Connection& c);

// D^{A,E}(e) moved to the alphabet [L^vee, E]
Poly<Q> lift_to_L(const SHLiePair& p, const Module<Q>& e, const Poly<Q>& f);

// alpha as an O(A)-linear degree-2 map E -> B^vee (x) E on the tower [A^vee, B^vee, E]
struct AtiyahData {
	Module<Q> perp;
	Tower<Q> tower;
	Op<Q> op;
};

Tower<Q> atiyah_tower(const SHLiePair& p, const Module<Q>& e);
Op<Q> alpha_by_curvature(const SHLiePair& p, const Module<Q>& e, const Connection& c); // (J (x) 1)(R)
Op<Q> alpha_by_operator(const SHLiePair& p, const Module<Q>& e);                      // delta(D^{A,E})

// alpha_k(a_1..a_k, b, e); the slot index is b * dim E + e
std::vector<SymMap<Q>> alpha_split(const SHLiePair& p, const Module<Q>& e);
std::vector<SymMap<Q>> alpha_components(const SHLiePair& p, const Module<Q>& e, const Op<Q>& alpha);
int alpha_kmax(const SHLiePair& p, const Module<Q>& e);
bool same_components(const std::vector<SymMap<Q>>& x, const std::vector<SymMap<Q>>& y);

struct AtiyahReport {
	AtiyahData data;
	std::vector<SymMap<Q>> split, from_operator, from_curvature;
	Report checks;
	bool zero() const { return data.op.is_zero(); }
};

AtiyahReport atiyah(const SHLiePair& p, const Module<Q>& e);

// Hom(E, B^vee (x) E) with alpha as a degree-2 cochain
HomModule<Q> atiyah_hom(const SHLiePair& p, const Module<Q>& e);
Report check_cocycle(const SHLiePair& p, const Module<Q>& e, const Op<Q>& alpha);

struct ConnectionComparison {
	Op<Q> witness; // B^vee-linear part of D_1 - D_2
	Op<Q> difference; // alpha_1 - alpha_2
	Report rep;
};
ConnectionComparison compare_connections(const SHLiePair& p, const Module<Q>& e, const Connection& c1, const Connection& c2);

struct VanishingVerdict {
	int max_weight = 0;
	bool zero_cocycle = false;
	bool vanishes = false;
	bool exact = false;     // truncation does not affect degrees <= 3
	bool verified = false;  // d(gamma) == alpha on full polynomials
	Op<Q> primitive;
	std::string verdict() const;
};
VanishingVerdict class_vanishes(const SHLiePair& p, const Module<Q>& e, int max_weight);

// (J (x) 1) from [L^vee, E] to [A^vee, L^vee slot, E]
Poly<Q> J_tensor(const SHLiePair& p, const Poly<Q>& f);
Report connecting_check(const SHLiePair& p, const Module<Q>& e, int samples = 12, unsigned seed = 7);

} // namespace shl
