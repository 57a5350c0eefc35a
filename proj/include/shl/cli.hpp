#pragma once

// Command dispatch and report rendering for the shl tool.

#include "shl/io.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace shl {

struct Section {
	std::string title;
	bool ok = true;
	long checked = 0;
	std::vector<std::string> lines;    // results, cochain dumps
	std::vector<std::string> failures; // residuals and counterexamples
};

struct Document {
	std::string command, file;
	std::vector<Section> sections;
	bool ok() const;
};

Section section_of(const Report& r, const std::string& title = "");

std::string render_text(const Document& d);
std::string render_json(const Document& d);

// exit code: 0 all checks pass, 1 a mathematical check failed, 2 input error
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// c * a1^*a2^ (x) b[-2] style, module generators suffixed with `suffix`
std::string cochain_str(const Module<Q>& m, const Poly<Q>& p, const std::string& suffix = "");

} // namespace shl
