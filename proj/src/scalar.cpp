#include "shl/scalar.hpp"

#include <stdexcept>

namespace shl {

Rational::Rational(long num, long den)
{
	if (den == 0)
		throw std::domain_error("zero denominator");
	q_ = mpq_class(num, den);
	q_.canonicalize();
}

Rational Rational::parse(const std::string& text)
{
	if (text.empty())
		throw std::invalid_argument("empty rational literal");
	mpq_class q;
	if (q.set_str(text, 10) != 0)
		throw std::invalid_argument("bad rational literal '" + text + "'");
	if (sgn(q.get_den()) == 0)
		throw std::invalid_argument("zero denominator in '" + text + "'");
	q.canonicalize();
	return Rational(q);
}

Rational Rational::inverse() const
{
	if (is_zero())
		throw std::domain_error("inverse of zero");
	return Rational(mpq_class(1 / q_));
}

Rational& Rational::operator/=(const Rational& o)
{
	if (o.is_zero())
		throw std::domain_error("division by zero");
	q_ /= o.q_;
	return *this;
}

} // namespace shl
