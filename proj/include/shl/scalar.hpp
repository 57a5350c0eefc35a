#pragma once

#include <gmpxx.h>

#include <Eigen/Core>
#include <ostream>
#include <string>

namespace shl {

// Exact rational. Wraps mpq_class so gmp expression templates never reach Eigen.
class Rational {
public:
	Rational() = default;
	Rational(long v) : q_(v) {}
	Rational(int v) : q_(static_cast<long>(v)) {}
	Rational(long num, long den);
	explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

	static Rational parse(const std::string& text);

	const mpq_class& raw() const { return q_; }
	bool is_zero() const { return sgn(q_) == 0; }
	int sign() const { return sgn(q_); }
	std::string str() const { return q_.get_str(); }
	Rational abs() const { return Rational(mpq_class(::abs(q_))); }
	Rational inverse() const;

	Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
	Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
	Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
	Rational& operator/=(const Rational& o);

	friend Rational operator+(Rational a, const Rational& b) { return a += b; }
	friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
	friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
	friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
	friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }
	friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
	friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
	friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
	friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
	mpq_class q_;
};

inline bool is_zero(const Rational& r) { return r.is_zero(); }

// a + b*hbar with hbar^2 = 0
template <class S>
struct Dual {
	S body{};
	S soul{};

	Dual() = default;
	Dual(int v) : body(v) {}
	Dual(long v) : body(v) {}
	Dual(const S& b) : body(b) {}
	Dual(const S& b, const S& s) : body(b), soul(s) {}

	static Dual hbar() { return Dual(S(0), S(1)); }

	Dual& operator+=(const Dual& o) { body += o.body; soul += o.soul; return *this; }
	Dual& operator-=(const Dual& o) { body -= o.body; soul -= o.soul; return *this; }
	Dual& operator*=(const Dual& o)
	{
		soul = body * o.soul + soul * o.body;
		body *= o.body;
		return *this;
	}
	friend Dual operator+(Dual a, const Dual& b) { return a += b; }
	friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
	friend Dual operator*(Dual a, const Dual& b) { return a *= b; }
	friend Dual operator-(const Dual& a) { return Dual(-a.body, -a.soul); }
	// needs an invertible body
	friend Dual operator/(const Dual& a, const Dual& b)
	{
		S q = a.body / b.body;
		return Dual(q, (a.soul - q * b.soul) / b.body);
	}
	friend bool operator==(const Dual& a, const Dual& b) { return a.body == b.body && a.soul == b.soul; }
	friend bool operator!=(const Dual& a, const Dual& b) { return !(a == b); }
	friend std::ostream& operator<<(std::ostream& os, const Dual& d)
	{
		return os << "(" << d.body << " + " << d.soul << "h)";
	}
};

template <class S>
bool is_zero(const Dual<S>& d) { return is_zero(d.body) && is_zero(d.soul); }

using Q = Rational;
using QH = Dual<Rational>;

inline Q sign_of(int parity) { return (parity & 1) ? Q(-1) : Q(1); }

} // namespace shl

namespace Eigen {
template <>
struct NumTraits<shl::Rational> : GenericNumTraits<shl::Rational> {
	typedef shl::Rational Real;
	typedef shl::Rational NonInteger;
	typedef shl::Rational Nested;
	enum {
		IsComplex = 0,
		IsInteger = 0,
		IsSigned = 1,
		RequireInitialization = 1,
		ReadCost = 1,
		AddCost = 3,
		MulCost = 3
	};
	static inline Real epsilon() { return Real(0); }
	static inline Real dummy_precision() { return Real(0); }
	static inline int digits10() { return 0; }
};
} // namespace Eigen
