#pragma once

// Definition files (.shl): a JSON document with the pair, its modules, deformations and gauges.

#include "shl/deform.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace shl {

struct ParseError : std::runtime_error {
	enum Kind { Syntax, UnknownName, DegreeMismatch, OddRepeat, Duplicate, Invalid };
	Kind kind;
	std::string where; // "line 3, column 7" or a JSON path such as brackets[2]
	ParseError(Kind k, const std::string& at, const std::string& what);
	static const char* kind_name(Kind k);
};

struct Definition {
	std::string source;
	SHLiePair pair; // A generators first, in file order
	std::vector<std::string> module_order;
	std::map<std::string, Module<Q>> modules;
	std::vector<std::string> deformation_order, gauge_order;
	std::map<std::string, Deformation> deformations;
	std::map<std::string, GaugeMap> gauges;
	std::vector<std::string> normalizations; // entries whose inputs were reordered, with the folded sign
};

Definition parse_definition(const std::string& text, const std::string& source = "<input>");
Definition load_definition(const std::string& path);
// canonical JSON; parsing it again gives the same definition
std::string serialize(const Definition& d);

// "B" is L/A, "B^" is A^perp, "ad" is A itself; anything else must be declared
Module<Q> find_module(const Definition& d, const std::string& name);

} // namespace shl
