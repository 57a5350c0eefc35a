#include "shl/io.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace shl {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

ParseError::ParseError(Kind k, const std::string& at, const std::string& what)
	: std::runtime_error(std::string(kind_name(k)) + " at " + at + ": " + what), kind(k), where(at)
{
}

const char* ParseError::kind_name(Kind k)
{
	switch (k) {
	case Syntax: return "SyntaxError";
	case UnknownName: return "UnknownName";
	case DegreeMismatch: return "DegreeMismatch";
	case OddRepeat: return "OddRepeat";
	case Duplicate: return "Duplicate";
	default: return "InvalidInput";
	}
}

namespace {

std::string line_col(const std::string& text, size_t byte)
{
	int line = 1, col = 1;
	for (size_t i = 0; i < byte && i < text.size(); ++i) {
		if (text[i] == '\n') {
			++line;
			col = 1;
		} else {
			++col;
		}
	}
	return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

[[noreturn]] void bad(const std::string& at, const std::string& what) { throw ParseError(ParseError::Invalid, at, what); }

const json& need(const json& j, const char* key, const std::string& at)
{
	if (!j.is_object() || !j.contains(key))
		bad(at, std::string("missing key '") + key + "'");
	return j.at(key);
}

std::string str_at(const json& j, const std::string& at)
{
	if (!j.is_string())
		bad(at, "expected a string");
	return j.get<std::string>();
}

int int_at(const json& j, const std::string& at)
{
	if (!j.is_number_integer())
		bad(at, "expected an integer");
	return j.get<int>();
}

const json& list_at(const json& j, const std::string& at)
{
	if (!j.is_array())
		bad(at, "expected a list");
	return j;
}

Q coeff_at(const json& j, const std::string& at)
{
	if (j.is_number_integer())
		return Q(j.get<long>());
	if (!j.is_string())
		bad(at, "coefficients are integers or \"p/q\" strings");
	try {
		return Rational::parse(j.get<std::string>());
	} catch (const std::exception&) {
		bad(at, "bad coefficient '" + j.get<std::string>() + "'");
	}
}

struct Names {
	std::map<std::string, int> index;
	std::vector<int> deg;
	std::string what;

	int at(const json& j, const std::string& where) const
	{
		std::string n = str_at(j, where);
		auto it = index.find(n);
		if (it == index.end())
			throw ParseError(ParseError::UnknownName, where, "no " + what + " named '" + n + "'");
		return it->second;
	}
};

Names names_of(const GradedSpace& sp, const std::string& what, const std::string& at)
{
	Names n;
	n.what = what;
	for (int i = 0; i < sp.dim(); ++i) {
		if (!n.index.emplace(sp.basis[i].name, i).second)
			throw ParseError(ParseError::Duplicate, at, "basis name '" + sp.basis[i].name + "' repeats");
		n.deg.push_back(sp.degree(i));
	}
	return n;
}

// sorted inputs with the Koszul sign; odd repeats are an error
NormalMonomial normalized(const std::vector<int>& deg, const std::vector<int>& in, const std::string& at)
{
	auto nm = normalize_monomial(deg, in);
	if (!nm)
		throw ParseError(ParseError::OddRepeat, at, "an odd generator repeats in the inputs");
	return *nm;
}

std::string join(const std::vector<std::string>& v)
{
	std::string s;
	for (const auto& x : v)
		s += (s.empty() ? "" : ",") + x;
	return s;
}

// images of dual generators: [{generator, image: [{monomial, coeff}]}]
Poly<Q> parse_image(const json& list, const Names& ln, const Alphabet& lv, const std::string& at)
{
	Poly<Q> p;
	const json& terms = list_at(list, at);
	for (size_t t = 0; t < terms.size(); ++t) {
		const std::string tat = at + "[" + std::to_string(t) + "]";
		const json& mono = list_at(need(terms[t], "monomial", tat), tat + ".monomial");
		std::vector<int> idx;
		for (size_t i = 0; i < mono.size(); ++i)
			idx.push_back(ln.at(mono[i], tat + ".monomial[" + std::to_string(i) + "]"));
		NormalMonomial nm = normalized(lv.deg, idx, tat);
		add_term(p, nm.indices, Q(nm.sign) * coeff_at(need(terms[t], "coeff", tat), tat + ".coeff"));
	}
	return p;
}

ojson image_json(const GradedSpace& l, const Poly<Q>& p)
{
	ojson out = ojson::array();
	for (const auto& [m, c] : p) {
		ojson mono = ojson::array();
		for (int g : m)
			mono.push_back(l.basis[g].name);
		out.push_back({{"monomial", mono}, {"coeff", c.str()}});
	}
	return out;
}

} // namespace

Definition parse_definition(const std::string& text, const std::string& source)
{
	Definition d;
	d.source = source;
	json doc;
	try {
		doc = json::parse(text);
	} catch (const json::parse_error& e) {
		std::string msg = e.what();
		auto p = msg.find("syntax error");
		throw ParseError(ParseError::Syntax, line_col(text, e.byte ? e.byte - 1 : 0),
			p == std::string::npos ? msg : msg.substr(p));
	}
	if (!doc.is_object())
		bad("top level", "expected an object");
	static const std::set<std::string> known{"field", "L", "brackets", "modules", "deformations", "gauges"};
	for (const auto& [k, v] : doc.items())
		if (!known.count(k))
			bad("top level", "unknown key '" + k + "'");
	if (str_at(need(doc, "field", "top level"), "field") != "Q")
		bad("field", "only \"Q\" is supported");

	// L, A first
	const json& basis = list_at(need(need(doc, "L", "top level"), "basis", "L"), "L.basis");
	std::vector<BasisVector> as, bs;
	for (size_t i = 0; i < basis.size(); ++i) {
		const std::string at = "L.basis[" + std::to_string(i) + "]";
		BasisVector g{str_at(need(basis[i], "name", at), at + ".name"), int_at(need(basis[i], "degree", at), at + ".degree")};
		std::string part = str_at(need(basis[i], "part", at), at + ".part");
		if (part == "A")
			as.push_back(g);
		else if (part == "B")
			bs.push_back(g);
		else
			bad(at + ".part", "part is \"A\" or \"B\"");
	}
	GradedSpace l;
	l.name = "L";
	l.basis = as;
	l.basis.insert(l.basis.end(), bs.begin(), bs.end());
	const int nA = static_cast<int>(as.size());
	Names ln = names_of(l, "basis element of L", "L.basis");

	// brackets
	int kmax = 1;
	struct Entry {
		NormalMonomial key;
		std::vector<std::pair<int, Q>> out;
		std::string at;
	};
	std::vector<Entry> entries;
	if (doc.contains("brackets")) {
		const json& br = list_at(doc["brackets"], "brackets");
		std::set<Mono> seen;
		for (size_t i = 0; i < br.size(); ++i) {
			const std::string at = "brackets[" + std::to_string(i) + "]";
			const json& in = list_at(need(br[i], "inputs", at), at + ".inputs");
			std::vector<int> idx;
			std::vector<std::string> given;
			int deg = 1;
			for (size_t k = 0; k < in.size(); ++k) {
				idx.push_back(ln.at(in[k], at + ".inputs[" + std::to_string(k) + "]"));
				given.push_back(in[k].get<std::string>());
				deg += l.degree(idx.back());
			}
			Entry e{normalized(ln.deg, idx, at), {}, at};
			if (!seen.insert(e.key.indices).second)
				throw ParseError(ParseError::Duplicate, at, "bracket of (" + join(given) + ") given twice");
			if (e.key.indices != Mono(idx.begin(), idx.end()))
				d.normalizations.push_back(at + ": (" + join(given) + ") reordered, sign " + (e.key.sign < 0 ? "-1" : "+1"));
			const json& out = list_at(need(br[i], "output", at), at + ".output");
			for (size_t k = 0; k < out.size(); ++k) {
				const std::string oat = at + ".output[" + std::to_string(k) + "]";
				int o = ln.at(need(out[k], "basis", oat), oat + ".basis");
				if (l.degree(o) != deg)
					throw ParseError(ParseError::DegreeMismatch, at,
						"output " + l.basis[o].name + " has degree " + std::to_string(l.degree(o)) + ", expected " + std::to_string(deg));
				e.out.push_back({o, coeff_at(need(out[k], "coeff", oat), oat + ".coeff")});
			}
			kmax = std::max(kmax, static_cast<int>(idx.size()));
			entries.push_back(std::move(e));
		}
	}
	d.pair.nA = nA;
	d.pair.l.space = l;
	d.pair.l.lam = empty_brackets(l, kmax);
	for (const auto& e : entries)
		for (const auto& [o, c] : e.out)
			d.pair.l.lam[e.key.indices.size()].add(e.key.indices, o, Q(e.key.sign) * c);

	// modules
	const LInfty a = d.pair.a();
	if (doc.contains("modules")) {
		const json& mods = doc["modules"];
		if (!mods.is_object())
			bad("modules", "expected a map from names to modules");
		for (const auto& [name, mj] : mods.items()) {
			const std::string at = "modules." + name;
			if (name == "B" || name == "B^" || name == "ad")
				throw ParseError(ParseError::Duplicate, at, "'" + name + "' is a built-in module");
			GradedSpace sp;
			sp.name = name;
			const json& mb = list_at(need(mj, "basis", at), at + ".basis");
			for (size_t i = 0; i < mb.size(); ++i) {
				const std::string bat = at + ".basis[" + std::to_string(i) + "]";
				sp.basis.push_back({str_at(need(mb[i], "name", bat), bat + ".name"), int_at(need(mb[i], "degree", bat), bat + ".degree")});
			}
			Names en = names_of(sp, "basis element of " + name, at + ".basis");
			std::vector<int> adeg(ln.deg.begin(), ln.deg.begin() + nA);
			std::vector<SymMap<Q>> acts;
			auto shell = [&](int k) {
				SymMap<Q> m;
				m.arity = k;
				m.src_deg = adeg;
				m.has_slot = true;
				m.slot_deg = en.deg;
				m.map_degree = 1;
				return m;
			};
			std::set<Mono> seen;
			if (mj.contains("actions")) {
				const json& ac = list_at(mj["actions"], at + ".actions");
				for (size_t i = 0; i < ac.size(); ++i) {
					const std::string eat = at + ".actions[" + std::to_string(i) + "]";
					const json& in = list_at(need(ac[i], "a_inputs", eat), eat + ".a_inputs");
					std::vector<int> idx;
					std::vector<std::string> given;
					int deg = 1;
					for (size_t k = 0; k < in.size(); ++k) {
						const std::string iat = eat + ".a_inputs[" + std::to_string(k) + "]";
						idx.push_back(ln.at(in[k], iat));
						if (idx.back() >= nA)
							throw ParseError(ParseError::UnknownName, iat, "'" + in[k].get<std::string>() + "' is not in A");
						given.push_back(in[k].get<std::string>());
						deg += l.degree(idx.back());
					}
					int el = en.at(need(ac[i], "element", eat), eat + ".element");
					deg += sp.degree(el);
					NormalMonomial nm = normalized(adeg, idx, eat);
					Mono key = nm.indices;
					key.push_back(el);
					if (!seen.insert(key).second)
						throw ParseError(ParseError::Duplicate, eat, "action on (" + join(given) + "; " + sp.basis[el].name + ") given twice");
					if (nm.indices != Mono(idx.begin(), idx.end()))
						d.normalizations.push_back(eat + ": (" + join(given) + ") reordered, sign " + (nm.sign < 0 ? "-1" : "+1"));
					const int k = static_cast<int>(idx.size());
					while (static_cast<int>(acts.size()) <= k)
						acts.push_back(shell(static_cast<int>(acts.size())));
					const json& out = list_at(need(ac[i], "output", eat), eat + ".output");
					for (size_t o = 0; o < out.size(); ++o) {
						const std::string oat = eat + ".output[" + std::to_string(o) + "]";
						int t = en.at(need(out[o], "basis", oat), oat + ".basis");
						if (sp.degree(t) != deg)
							throw ParseError(ParseError::DegreeMismatch, eat,
								"output " + sp.basis[t].name + " has degree " + std::to_string(sp.degree(t)) + ", expected " + std::to_string(deg));
						acts[k].add(key, t, Q(nm.sign) * coeff_at(need(out[o], "coeff", oat), oat + ".coeff"));
					}
				}
			}
			if (acts.empty())
				acts.push_back(shell(0));
			d.modules[name] = module_from_actions(a, name, sp, acts);
			d.module_order.push_back(name);
		}
	}

	// deformations and gauges: images of dual generators
	const Alphabet lv = d.pair.lv();
	auto images = [&](const json& list, const std::string& at, bool only_a, int shift) {
		std::map<int, Poly<Q>> out;
		const json& ent = list_at(list, at);
		for (size_t i = 0; i < ent.size(); ++i) {
			const std::string eat = at + "[" + std::to_string(i) + "]";
			int g = ln.at(need(ent[i], "generator", eat), eat + ".generator");
			if (only_a && g >= nA)
				bad(eat + ".generator", "gauge maps move only A^vee generators");
			if (out.count(g))
				throw ParseError(ParseError::Duplicate, eat, "image of " + l.basis[g].name + " given twice");
			Poly<Q> p = parse_image(need(ent[i], "image", eat), ln, lv, eat + ".image");
			for (const auto& [m, c] : p)
				if (mono_degree(lv, m) != lv.deg[g] + shift)
					throw ParseError(ParseError::DegreeMismatch, eat, "term " + mono_str(lv, m) + " has degree " +
						std::to_string(mono_degree(lv, m)) + ", expected " + std::to_string(lv.deg[g] + shift));
			out[g] = std::move(p);
		}
		return out;
	};
	if (doc.contains("deformations")) {
		if (!doc["deformations"].is_object())
			bad("deformations", "expected a map");
		for (const auto& [name, dj] : doc["deformations"].items()) {
			Deformation df;
			df.name = name;
			df.q_plus.degree = 1;
			for (auto& [g, p] : images(dj, "deformations." + name, false, 1))
				df.q_plus.set(g, p);
			d.deformations[name] = df;
			d.deformation_order.push_back(name);
		}
	}
	if (doc.contains("gauges")) {
		if (!doc["gauges"].is_object())
			bad("gauges", "expected a map");
		for (const auto& [name, gj] : doc["gauges"].items()) {
			GaugeMap gm;
			gm.name = name;
			for (auto& [g, p] : images(gj, "gauges." + name, true, 0))
				for (const auto& [m, c] : p) {
					int k = mono_count_in(m, nA, l.dim());
					if (k == 0)
						bad("gauges." + name, "term " + mono_str(lv, m) + " has no B^vee factor");
					Derivation<Q>& psi = gm.psi[k];
					Poly<Q> cur = psi.img.count(g) ? psi.img[g] : Poly<Q>{};
					add_term(cur, m, c);
					psi.set(g, std::move(cur));
				}
			d.gauges[name] = gm;
			d.gauge_order.push_back(name);
		}
	}
	return d;
}

Definition load_definition(const std::string& path)
{
	std::ifstream in(path);
	if (!in)
		throw ParseError(ParseError::Invalid, path, "cannot open file");
	std::stringstream ss;
	ss << in.rdbuf();
	return parse_definition(ss.str(), path);
}

std::string serialize(const Definition& d)
{
	const GradedSpace& l = d.pair.l.space;
	const Alphabet lv = d.pair.lv();
	ojson doc;
	doc["field"] = "Q";
	ojson basis = ojson::array();
	for (int i = 0; i < l.dim(); ++i)
		basis.push_back({{"name", l.basis[i].name}, {"degree", l.degree(i)}, {"part", i < d.pair.nA ? "A" : "B"}});
	doc["L"] = {{"basis", basis}};
	ojson br = ojson::array();
	for (const auto& f : d.pair.l.lam)
		for (const auto& [key, v] : f.coeffs) {
			ojson in = ojson::array(), out = ojson::array();
			for (int g : key)
				in.push_back(l.basis[g].name);
			for (const auto& [o, c] : v)
				out.push_back({{"basis", l.basis[o].name}, {"coeff", c.str()}});
			br.push_back({{"inputs", in}, {"output", out}});
		}
	doc["brackets"] = br;
	ojson mods = ojson::object();
	for (const auto& name : d.module_order) {
		const Module<Q>& m = d.modules.at(name);
		ojson mb = ojson::array(), ac = ojson::array();
		for (int j = 0; j < m.dim(); ++j)
			mb.push_back({{"name", m.space.basis[j].name}, {"degree", m.space.degree(j)}});
		for (const auto& f : module_actions(m))
			for (const auto& [key, v] : f.coeffs) {
				ojson in = ojson::array(), out = ojson::array();
				for (size_t i = 0; i + 1 < key.size(); ++i)
					in.push_back(l.basis[key[i]].name);
				for (const auto& [o, c] : v)
					out.push_back({{"basis", m.space.basis[o].name}, {"coeff", c.str()}});
				ac.push_back({{"a_inputs", in}, {"element", m.space.basis[key.back()].name}, {"output", out}});
			}
		mods[name] = {{"basis", mb}, {"actions", ac}};
	}
	doc["modules"] = mods;
	ojson defs = ojson::object();
	for (const auto& name : d.deformation_order) {
		ojson ent = ojson::array();
		for (const auto& [g, p] : d.deformations.at(name).q_plus.img)
			ent.push_back({{"generator", l.basis[g].name}, {"image", image_json(l, p)}});
		defs[name] = ent;
	}
	doc["deformations"] = defs;
	ojson gs = ojson::object();
	for (const auto& name : d.gauge_order) {
		Derivation<Q> lam = d.gauges.at(name).lambda();
		ojson ent = ojson::array();
		for (const auto& [g, p] : lam.img)
			ent.push_back({{"generator", l.basis[g].name}, {"image", image_json(l, p)}});
		gs[name] = ent;
	}
	doc["gauges"] = gs;
	return doc.dump(2) + "\n";
}

Module<Q> find_module(const Definition& d, const std::string& name)
{
	if (name == "B")
		return quotient_module(d.pair);
	if (name == "B^")
		return perp_module(d.pair);
	if (name == "ad")
		return adjoint_module(d.pair.a());
	auto it = d.modules.find(name);
	if (it == d.modules.end())
		throw ParseError(ParseError::UnknownName, "--module", "no module named '" + name + "'");
	return it->second;
}

} // namespace shl
