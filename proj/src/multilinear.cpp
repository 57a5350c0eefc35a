#include "shl/multilinear.hpp"

namespace shl {

Alphabet dual_alphabet(const GradedSpace& v)
{
	Alphabet a;
	for (const auto& b : v.basis)
		a.add(b.name + "^", -b.degree);
	return a;
}

} // namespace shl
