#include "shl/cli.hpp"

#include "shl/complex.hpp"
#include "shl/liecoh.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <functional>
#include <future>
#include <sstream>

namespace shl {

bool Document::ok() const
{
	for (const auto& s : sections)
		if (!s.ok)
			return false;
	return true;
}

Section section_of(const Report& r, const std::string& title)
{
	Section s;
	s.title = title.empty() ? r.name : title;
	s.ok = r.ok;
	s.checked = r.checked;
	for (const auto& d : r.details)
		(r.ok ? s.lines : s.failures).push_back(d);
	if (!r.ok && r.failures > static_cast<long>(r.details.size()))
		s.failures.push_back("... " + std::to_string(r.failures) + " failures in total");
	return s;
}

std::string render_text(const Document& d)
{
	std::ostringstream os;
	os << "shl " << d.command << " " << d.file << "\n";
	for (const auto& s : d.sections) {
		os << "== " << s.title << ": " << (s.ok ? "PASS" : "FAIL");
		if (s.checked)
			os << " (" << s.checked << " checked)";
		os << "\n";
		for (const auto& l : s.lines)
			os << "  " << l << "\n";
		for (const auto& f : s.failures)
			os << "  ! " << f << "\n";
	}
	os << "result: " << (d.ok() ? "PASS" : "FAIL") << "\n";
	return os.str();
}

std::string render_json(const Document& d)
{
	nlohmann::ordered_json j;
	j["command"] = d.command;
	j["file"] = d.file;
	j["ok"] = d.ok();
	j["sections"] = nlohmann::ordered_json::array();
	for (const auto& s : d.sections)
		j["sections"].push_back({{"title", s.title}, {"ok", s.ok}, {"checked", s.checked}, {"lines", s.lines}, {"failures", s.failures}});
	return j.dump(2) + "\n";
}

std::string cochain_str(const Module<Q>& m, const Poly<Q>& p, const std::string& suffix)
{
	if (p.empty())
		return "0";
	std::string s;
	for (const auto& [mono, c] : p) {
		std::string t;
		for (size_t i = 0; i + 1 < mono.size(); ++i)
			t += (t.empty() ? "" : "*") + m.alpha.name[mono[i]];
		std::string g = m.space.basis[mono.back() - m.nA].name + suffix;
		t = t.empty() ? g : t + " (x) " + g;
		std::string cs = c.str();
		bool neg = c.sign() < 0;
		std::string mag = neg ? cs.substr(1) : cs;
		if (s.empty())
			s = (neg ? "-" : "") + (mag == "1" ? "" : mag + "*") + t;
		else
			s += std::string(neg ? " - " : " + ") + (mag == "1" ? "" : mag + "*") + t;
	}
	return s;
}

namespace {

struct Options {
	std::string file;
	std::vector<std::string> modules, deformations;
	std::string gauge;
	int max_weight = -1;
	std::vector<int> degrees;
	bool json = false, verbose = false, timing = false;
	int jobs = 1;
};

// independent sections computed on up to `jobs` threads, kept in order
std::vector<Section> run_tasks(const std::vector<std::function<std::vector<Section>()>>& tasks, int jobs)
{
	std::vector<std::vector<Section>> parts(tasks.size());
	if (jobs <= 1) {
		for (size_t i = 0; i < tasks.size(); ++i)
			parts[i] = tasks[i]();
	} else {
		for (size_t start = 0; start < tasks.size(); start += static_cast<size_t>(jobs)) {
			std::vector<std::future<std::vector<Section>>> fs;
			for (size_t i = start; i < std::min(tasks.size(), start + static_cast<size_t>(jobs)); ++i)
				fs.push_back(std::async(std::launch::async, tasks[i]));
			for (size_t i = 0; i < fs.size(); ++i)
				parts[start + i] = fs[i].get();
		}
	}
	std::vector<Section> out;
	for (auto& p : parts)
		out.insert(out.end(), p.begin(), p.end());
	return out;
}

std::vector<std::string> modules_or(const Definition& d, const Options& o, std::vector<std::string> fallback)
{
	if (!o.modules.empty())
		return o.modules;
	for (const auto& n : d.module_order)
		fallback.push_back(n);
	return fallback;
}

std::string key_str(const SHLiePair& p, const Module<Q>& e, const Mono& key)
{
	std::string s;
	for (size_t i = 0; i + 1 < key.size(); ++i)
		s += p.l.space.basis[key[i]].name + ",";
	const int slot = key.back();
	s += p.l.space.basis[p.nA + slot / e.dim()].name + "," + e.space.basis[slot % e.dim()].name;
	return s;
}

std::vector<std::string> component_lines(const SHLiePair& p, const Module<Q>& e, const std::vector<SymMap<Q>>& comps)
{
	std::vector<std::string> out;
	for (const auto& f : comps)
		for (const auto& [key, v] : f.coeffs)
			out.push_back("alpha_" + std::to_string(f.arity) + "(" + key_str(p, e, key) + ") = " + vec_str(e.space, v));
	return out;
}

// sum_j alpha(e_j) (x) e_j^ with e_j^ moved in front of the output generator
std::string element_str(const Module<Q>& e, const Tower<Q>& t, const Op<Q>& op)
{
	std::map<std::string, Q> terms;
	std::vector<std::string> order;
	for (const auto& [j, v] : op.img)
		for (const auto& [m, c] : v) {
			const int k = m.back() - t.off[1];
			std::string a, b;
			for (size_t i = 0; i + 1 < m.size(); ++i)
				(m[i] < t.off[0] ? a : b) += (m[i] < t.off[0] && !a.empty() ? "*" : (b.empty() ? "" : " (x) ")) + t.alpha.name[m[i]];
			std::string key = (a.empty() ? "" : a + " (x) ") + b + " (x) " + e.space.basis[j].name + "^ (x) " + e.space.basis[k].name;
			Q x = odd(e.space.degree(j)) && odd(e.space.degree(k)) ? -c : c;
			if (!terms.count(key))
				order.push_back(key);
			terms[key] += x;
		}
	std::string s;
	for (const auto& key : order) {
		const Q& c = terms[key];
		if (c.is_zero())
			continue;
		std::string cs = c.abs().str();
		s += (s.empty() ? (c.sign() < 0 ? "-" : "") : (c.sign() < 0 ? " - " : " + ")) + (cs == "1" ? "" : cs + "*") + key;
	}
	return s.empty() ? "0" : s;
}

std::vector<Section> cmd_validate(const Definition& d, const Options& o)
{
	const SHLiePair& p = d.pair;
	std::vector<std::function<std::vector<Section>()>> tasks;
	tasks.push_back([&] { return std::vector<Section>{section_of(check_jacobi(p.l), "Jacobi identities")}; });
	tasks.push_back([&] { return std::vector<Section>{section_of(check_pair(p), "pair")}; });
	for (const auto& name : modules_or(d, o, {"B", "B^"}))
		tasks.push_back([&, name] {
			return std::vector<Section>{section_of(check_module(p.a(), find_module(d, name)), "module " + name)};
		});
	for (const auto& name : d.deformation_order)
		tasks.push_back([&, name] {
			return std::vector<Section>{section_of(check_compatible(p, d.deformations.at(name)), "deformation " + name)};
		});
	for (const auto& name : d.gauge_order)
		tasks.push_back([&, name] { return std::vector<Section>{section_of(check_gauge_map(p, d.gauges.at(name)), "gauge " + name)}; });
	return run_tasks(tasks, o.jobs);
}

std::vector<Section> cmd_atiyah(const Definition& d, const Options& o, bool dump)
{
	const SHLiePair& p = d.pair;
	std::vector<std::function<std::vector<Section>()>> tasks;
	for (const auto& name : modules_or(d, o, {"B"}))
		tasks.push_back([&, name] {
			Module<Q> e = find_module(d, name);
			AtiyahReport r = atiyah(p, e);
			Section s = section_of(r.checks, "atiyah " + name);
			s.lines.clear();
			if (dump) {
				s.title = "routes for " + name;
				auto diff = [&](const char* what, const std::vector<SymMap<Q>>& x, const std::vector<SymMap<Q>>& y) {
					std::vector<std::string> a = component_lines(p, e, x), b = component_lines(p, e, y);
					int n = 0;
					for (const auto& l : a)
						if (std::find(b.begin(), b.end(), l) == b.end())
							s.lines.push_back(std::string(what) + " only: " + l), ++n;
					for (const auto& l : b)
						if (std::find(a.begin(), a.end(), l) == a.end())
							s.lines.push_back(std::string(what) + " other only: " + l), ++n;
					s.lines.push_back(std::string(what) + ": " + (n ? std::to_string(n) + " differences" : "no differences"));
				};
				diff("split vs delta(D)", r.split, r.from_operator);
				diff("split vs (J(x)1)(R)", r.split, r.from_curvature);
				return std::vector<Section>{s, section_of(connecting_check(p, e), "connecting map for " + name)};
			}
			s.lines = component_lines(p, e, r.split);
			for (const auto& [j, v] : r.data.op.img)
				s.lines.push_back("alpha(" + e.space.basis[j].name + ") = " + poly_str(r.data.tower.alpha, v));
			if (!r.zero())
				s.lines.push_back("alpha^" + name + " = " + element_str(e, r.data.tower, r.data.op));
			s.lines.push_back(r.zero() ? "alpha = 0" : "all other components zero");
			s.lines.push_back("routes: split formula, delta(D^{A,E}) and (J(x)1)(R) " +
				std::string(r.checks.ok ? "agree" : "disagree"));
			return std::vector<Section>{s};
		});
	return run_tasks(tasks, o.jobs);
}

std::vector<Section> cmd_class(const Definition& d, const Options& o)
{
	const SHLiePair& p = d.pair;
	const int N = o.max_weight >= 0 ? o.max_weight : 4;
	std::vector<std::function<std::vector<Section>()>> tasks;
	for (const auto& name : modules_or(d, o, {"B"}))
		tasks.push_back([&, name] {
			Module<Q> e = find_module(d, name);
			VanishingVerdict v = class_vanishes(p, e, N);
			Section s;
			s.title = "class of alpha^" + name;
			s.checked = 1;
			s.lines.push_back("verdict: " + v.verdict());
			if (v.vanishes && !v.zero_cocycle) {
				HomModule<Q> h = atiyah_hom(p, e);
				s.lines.push_back("primitive: " + cochain_str(h.m, h.from_op(v.primitive)));
			}
			if (v.vanishes && !v.verified && !v.zero_cocycle) {
				s.ok = false;
				s.failures.push_back("the primitive found on the truncation does not survive on full polynomials");
			}
			return std::vector<Section>{s};
		});
	return run_tasks(tasks, o.jobs);
}

std::vector<int> degrees_or(const Options& o, std::vector<int> fallback) { return o.degrees.empty() ? fallback : o.degrees; }

std::vector<Section> cmd_cohomology(const Definition& d, const Options& o)
{
	std::vector<std::function<std::vector<Section>()>> tasks;
	for (const auto& name : modules_or(d, o, {"B"}))
		for (int n : degrees_or(o, {0, 1, 2, 3}))
			tasks.push_back([&, name, n] {
				Module<Q> e = find_module(d, name);
				const int N = o.max_weight >= 0 ? o.max_weight : std::max(n + 2, 1);
				TruncatedComplex c(e, N);
				CohomologyResult h = c.cohomology(n);
				Section s;
				s.title = "H^" + std::to_string(n) + "(A, " + name + "), weight <= " + std::to_string(N);
				s.checked = 2;
				s.lines.push_back("dim " + std::to_string(h.dim) + (h.exact ? " (exact)" : " (truncated)") + ", cochains " +
					std::to_string(h.cochains) + ", cocycles " + std::to_string(h.cocycles) + ", boundaries " + std::to_string(h.boundaries));
				for (const auto& r : h.reps)
					s.lines.push_back("class " + cochain_str(e, r));
				if (!c.d_squared_zero(n - 1) || !c.d_squared_zero(n)) {
					s.ok = false;
					s.failures.push_back("d^2 != 0 on the truncation");
				}
				return std::vector<Section>{s};
			});
	return run_tasks(tasks, o.jobs);
}

Section table_section(const Module<Q>& left, const Module<Q>& right, const BracketTable& t, bool act)
{
	Section s = section_of(t.checks, std::string(act ? "action on " : "bracket on ") + right.name + "[-2], degrees (" +
		std::to_string(t.n1) + ", " + std::to_string(t.n2) + "), weight <= " + std::to_string(t.max_weight));
	s.lines.clear();
	for (const auto& g : t.generators)
		s.lines.push_back("[" + left.space.basis[g.left].name + "[-2]," + right.space.basis[g.right].name + "[-2]] = " +
			cochain_str(right, g.value, "[-2]"));
	s.lines.push_back(std::to_string(t.left.size()) + " x " + std::to_string(t.right.size()) + " classes" +
		(t.exact ? " (exact)" : " (truncated)"));
	for (size_t i = 0; i < t.left.size(); ++i)
		s.lines.push_back("x" + std::to_string(i) + " = " + cochain_str(left, t.left[i], "[-2]"));
	if (act)
		for (size_t j = 0; j < t.right.size(); ++j)
			s.lines.push_back("r" + std::to_string(j) + " = " + cochain_str(right, t.right[j], "[-2]"));
	for (size_t k = 0; k < t.target.size(); ++k)
		s.lines.push_back("y" + std::to_string(k) + " = " + cochain_str(right, t.target[k], "[-2]"));
	for (size_t i = 0; i < t.out.size(); ++i)
		for (size_t j = 0; j < t.out[i].size(); ++j) {
			std::string v;
			for (size_t k = 0; k < t.out[i][j].size(); ++k)
				if (!t.out[i][j][k].is_zero())
					v += (v.empty() ? "" : " + ") + t.out[i][j][k].str() + "*y" + std::to_string(k);
			s.lines.push_back("[x" + std::to_string(i) + "," + (act ? "r" : "x") + std::to_string(j) + "] = " + (v.empty() ? "0" : v));
		}
	return s;
}

std::vector<Section> cmd_bracket(const Definition& d, const Options& o, bool act)
{
	const SHLiePair& p = d.pair;
	std::vector<std::function<std::vector<Section>()>> tasks;
	std::vector<std::string> mods = act ? modules_or(d, o, {}) : std::vector<std::string>{"B"};
	if (mods.empty())
		throw ParseError(ParseError::UnknownName, "--module", "action needs a module");
	if (!act)
		tasks.push_back([&] {
			SkewWitness w = skew_witness(p);
			Section s = section_of(w.rep, "skew witness P");
			HomModule<Q> h = hom_module(perp_module(p), atiyah_tower(p, perp_module(p)), "P");
			if (!w.p.is_zero())
				s.lines.push_back("P = " + cochain_str(h.m, h.from_op(w.p)));
			return std::vector<Section>{s};
		});
	for (const auto& name : mods)
		tasks.push_back([&, name] {
			return std::vector<Section>{section_of(jacobi_witness(p, find_module(d, name)).rep, "Jacobi witness on " + name)};
		});
	for (const auto& name : mods)
		for (int n : degrees_or(o, {-1, 0, 1, 2}))
			tasks.push_back([&, name, n] {
				const int N = o.max_weight >= 0 ? o.max_weight : n + 2;
				Module<Q> b = quotient_module(p), e = find_module(d, name);
				BracketTable t = act ? action_table(p, e, n, n, N) : bracket_table(p, n, n, N);
				return std::vector<Section>{table_section(b, e, t, act)};
			});
	return run_tasks(tasks, o.jobs);
}

std::vector<Section> cmd_deform(const Definition& d, const Options& o)
{
	const SHLiePair& p = d.pair;
	std::vector<Section> out;
	auto def = [&](const std::string& n) {
		auto it = d.deformations.find(n);
		if (it == d.deformations.end())
			throw ParseError(ParseError::UnknownName, "--deformation", "no deformation named '" + n + "'");
		return it->second;
	};
	std::vector<std::string> names = o.deformations.empty() ? d.deformation_order : o.deformations;
	if (names.empty())
		throw ParseError(ParseError::UnknownName, "--deformation", "the file declares no deformations");
	for (const auto& n : names)
		out.push_back(section_of(check_compatible(p, def(n)), "compatibility of " + n));
	std::vector<std::string> mods = modules_or(d, o, {"B"});
	for (const auto& name : mods) {
		Module<Q> e = find_module(d, name);
		for (const auto& n : names) {
			DeformedAtiyah a = deformed_atiyah(p, e, def(n));
			Section s = section_of(a.rep, "deformed atiyah cocycle of " + name + " by " + n);
			s.lines.clear();
			HomModule<Q> h = atiyah_hom(p, e);
			s.lines.push_back("soul = " + cochain_str(h.m, h.from_op(a.soul)));
			out.push_back(s);
		}
	}
	if (!o.gauge.empty()) {
		auto it = d.gauges.find(o.gauge);
		if (it == d.gauges.end())
			throw ParseError(ParseError::UnknownName, "--gauge", "no gauge named '" + o.gauge + "'");
		if (names.size() != 2)
			throw ParseError(ParseError::Invalid, "--deformation", "a gauge check needs exactly two deformations");
		const Deformation d1 = def(names[0]), d2 = def(names[1]);
		Report g = check_gauge(p, d1, d2, it->second);
		out.push_back(section_of(g, "gauge " + o.gauge + ": " + names[0] + " ~ " + names[1]));
		if (g.ok)
			for (const auto& name : mods) {
				Module<Q> e = find_module(d, name);
				GaugeWitness w = verify_gauge_invariance(p, e, d1, d2, it->second);
				Section s = section_of(w.rep, "gauge invariance on " + name + ": alpha - alphabar = h dW");
				s.lines.clear();
				HomModule<Q> h1 = hom_module(e, atiyah_tower(p, e), "W");
				s.lines.push_back("W = " + cochain_str(h1.m, h1.from_op(w.w)));
				HomModule<Q> h2 = atiyah_hom(p, e);
				s.lines.push_back("dW = " + cochain_str(h2.m, h2.from_op(w.dw)));
				out.push_back(s);
			}
	}
	return out;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
	CLI::App app{"exact computations for SH Lie pairs", "shl"};
	app.require_subcommand(1);
	Options o;
	std::string which;
	auto add = [&](const std::string& name, const std::string& help) {
		CLI::App* c = app.add_subcommand(name, help);
		c->add_option("file", o.file, "definition file (.shl)")->required();
		c->add_option("--module", o.modules, "module name; B, B^ and ad are built in");
		c->add_option("--max-weight", o.max_weight, "truncation weight (default degree + 2)");
		c->add_option("--degree", o.degrees, "degree");
		c->add_option("--deformation", o.deformations, "deformation name (repeatable)");
		c->add_option("--gauge", o.gauge, "gauge name");
		c->add_option("--jobs", o.jobs, "threads; output does not depend on it")->check(CLI::PositiveNumber);
		c->add_flag("--json", o.json, "machine-readable report");
		c->add_flag("--verbose", o.verbose, "echo normalized inputs");
		c->add_flag("--timing", o.timing, "append the elapsed time");
		c->callback([&, name] { which = name; });
	};
	add("validate", "Jacobi, pair and module checks");
	add("atiyah", "Atiyah cocycle by three routes, with the cocycle check");
	add("class", "vanishing of the Atiyah class");
	add("cohomology", "Chevalley-Eilenberg cohomology of a module");
	add("bracket", "bracket on H(A, B[-2]) with witnesses");
	add("action", "action of H(A, B[-2]) on H(A, E[-2])");
	add("deform", "compatibility, deformed cocycle, gauge invariance");
	add("oracle", "differences between the routes to alpha");

	std::vector<std::string> rev(args.rbegin(), args.rend());
	try {
		app.parse(rev);
	} catch (const CLI::CallForHelp&) {
		out << app.help();
		return 0;
	} catch (const CLI::ParseError& e) {
		err << "error: " << e.what() << "\n";
		return 2;
	}

	auto t0 = std::chrono::steady_clock::now();
	Document doc;
	doc.command = which;
	doc.file = o.file;
	try {
		Definition d = load_definition(o.file);
		for (const auto& m : o.modules)
			(void)find_module(d, m);
		if (which == "validate")
			doc.sections = cmd_validate(d, o);
		else if (which == "atiyah")
			doc.sections = cmd_atiyah(d, o, false);
		else if (which == "oracle")
			doc.sections = cmd_atiyah(d, o, true);
		else if (which == "class")
			doc.sections = cmd_class(d, o);
		else if (which == "cohomology")
			doc.sections = cmd_cohomology(d, o);
		else if (which == "bracket")
			doc.sections = cmd_bracket(d, o, false);
		else if (which == "action")
			doc.sections = cmd_bracket(d, o, true);
		else
			doc.sections = cmd_deform(d, o);
		if (o.verbose && !d.normalizations.empty()) {
			Section s;
			s.title = "normalized inputs";
			s.lines = d.normalizations;
			doc.sections.insert(doc.sections.begin(), s);
		}
	} catch (const ParseError& e) {
		err << "error: " << e.what() << "\n";
		return 2;
	} catch (const std::exception& e) {
		// pair or module data the computation cannot accept
		err << "error: " << e.what() << "\n";
		return 2;
	}
	if (o.timing) {
		auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
		Section s;
		s.title = "timing";
		s.lines.push_back(std::to_string(ms) + " ms");
		doc.sections.push_back(s);
	}
	out << (o.json ? render_json(doc) : render_text(doc));
	return doc.ok() ? 0 : 1;
}

} // namespace shl
