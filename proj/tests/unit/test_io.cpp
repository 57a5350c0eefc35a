#include <doctest.h>

#include "shl/cli.hpp"
#include "shl/io.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace shl;

namespace {

const std::string lie = R"({
  "field": "Q",
  "L": {"basis": [{"name": "x", "degree": -1, "part": "A"}, {"name": "y", "degree": -1, "part": "B"}]},
  "brackets": [{"inputs": ["x", "y"], "output": [{"basis": "y", "coeff": 1}]}]
})";

std::string with_brackets(const std::string& brackets, const std::string& extra_basis = "")
{
	return R"({"field": "Q", "L": {"basis": [{"name": "x", "degree": -1, "part": "A"},
	  {"name": "y", "degree": -1, "part": "B"})" + extra_basis + R"(]}, "brackets": )" + brackets + "}";
}

ParseError::Kind kind_of(const std::string& text)
{
	try {
		parse_definition(text);
	} catch (const ParseError& e) {
		return e.kind;
	}
	FAIL("no error");
	return ParseError::Invalid;
}

int run(const std::vector<std::string>& args, std::string* out = nullptr)
{
	std::ostringstream o, e;
	int c = run_cli(args, o, e);
	if (out)
		*out = o.str();
	return c;
}

std::string temp_file(const std::string& name, const std::string& text)
{
	auto p = std::filesystem::temp_directory_path() / name;
	std::ofstream(p) << text;
	return p.string();
}

std::vector<std::string> examples()
{
	std::vector<std::string> out;
	for (const auto& f : std::filesystem::directory_iterator(SHL_EXAMPLES))
		if (f.path().extension() == ".shl")
			out.push_back(f.path().string());
	std::sort(out.begin(), out.end());
	return out;
}

} // namespace

TEST_CASE("parse a small Lie pair")
{
	Definition d = parse_definition(lie);
	CHECK(d.pair.nA == 1);
	CHECK(d.pair.l.space.dim() == 2);
	const Vec<Q>* v = d.pair.l.lam[2].find(Mono{0, 1});
	REQUIRE(v);
	CHECK(*v == Vec<Q>{{1, Q(1)}});
	CHECK(d.normalizations.empty());
}

TEST_CASE("reordered inputs fold a Koszul sign")
{
	Definition d = parse_definition(with_brackets(R"([{"inputs": ["y", "x"], "output": [{"basis": "y", "coeff": "1/2"}]}])"));
	const Vec<Q>* v = d.pair.l.lam[2].find(Mono{0, 1});
	REQUIRE(v);
	// both inputs are odd
	CHECK(*v == Vec<Q>{{1, Q(-1, 2)}});
	REQUIRE(d.normalizations.size() == 1);
	CHECK(d.normalizations[0].find("sign -1") != std::string::npos);
}

TEST_CASE("parse errors")
{
	CHECK(kind_of(with_brackets(R"([{"inputs": ["x", "z"], "output": [{"basis": "y", "coeff": 1}]}])")) == ParseError::UnknownName);
	CHECK(kind_of(with_brackets(R"([{"inputs": ["x", "x"], "output": [{"basis": "y", "coeff": 1}]}])")) == ParseError::OddRepeat);
	CHECK(kind_of(with_brackets(R"([{"inputs": ["x", "y"], "output": [{"basis": "z", "coeff": 1}]}])",
			  R"(, {"name": "z", "degree": 0, "part": "B"})")) == ParseError::DegreeMismatch);
	CHECK(kind_of(with_brackets("[]", R"(, {"name": "y", "degree": 0, "part": "B"})")) == ParseError::Duplicate);
	CHECK(kind_of(with_brackets(R"([{"inputs": ["x", "y"], "output": [{"basis": "y", "coeff": 1}]},
		{"inputs": ["y", "x"], "output": [{"basis": "y", "coeff": 1}]}])")) == ParseError::Duplicate);

	try {
		parse_definition("{\n  \"field\": \"Q\",\n  \"L\": [1,\n}", "bad.shl");
		FAIL("no error");
	} catch (const ParseError& e) {
		CHECK(e.kind == ParseError::Syntax);
		MESSAGE(e.where << ": " << std::string(e.what()));
		CHECK(e.where.find("line 4") != std::string::npos);
	}
	try {
		parse_definition(with_brackets(R"([{"inputs": ["x", "y"], "output": []}, {"inputs": ["x", "q"], "output": []}])"));
		FAIL("no error");
	} catch (const ParseError& e) {
		CHECK(e.where.find("brackets[1]") != std::string::npos);
	}
}

TEST_CASE("serialize round trip")
{
	for (const auto& path : examples()) {
		Definition d = load_definition(path);
		std::string s = serialize(d);
		Definition r = parse_definition(s);
		CHECK(serialize(r) == s);
		CHECK(r.pair.nA == d.pair.nA);
		for (int k = 0; k <= d.pair.l.kmax(); ++k)
			CHECK(r.pair.l.lam[k].coeffs == d.pair.l.lam[k].coeffs);
		CHECK(r.module_order == d.module_order);
		CHECK(r.deformation_order == d.deformation_order);
	}
}

TEST_CASE("exit codes")
{
	std::string ex = std::string(SHL_EXAMPLES) + "/k-pair.shl";
	CHECK(run({"validate", ex}) == 0);
	CHECK(run({"validate", "/nonexistent/file.shl"}) == 2);
	CHECK(run({"validate", temp_file("shl_bad_syntax.shl", "{ \"field\": ")}) == 2);
	CHECK(run({"atiyah", ex, "--module", "nope"}) == 2);
	CHECK(run({"frobnicate", ex}) == 2);

	// [x,y] = x, [x,z] = x, [y,z] = y fails Jacobi
	std::string bad = R"({"field": "Q", "L": {"basis": [{"name": "x", "degree": -1, "part": "A"},
	  {"name": "y", "degree": -1, "part": "B"}, {"name": "z", "degree": -1, "part": "B"}]},
	  "brackets": [{"inputs": ["x", "y"], "output": [{"basis": "x", "coeff": 1}]},
	               {"inputs": ["x", "z"], "output": [{"basis": "x", "coeff": 1}]},
	               {"inputs": ["y", "z"], "output": [{"basis": "y", "coeff": 1}]}]})";
	std::string out;
	CHECK(run({"validate", temp_file("shl_bad_jacobi.shl", bad)}, &out) == 1);
	CHECK(out.find("FAIL") != std::string::npos);
}

TEST_CASE("output is deterministic and independent of --jobs")
{
	for (const auto& path : examples())
		for (const char* cmd : {"atiyah", "cohomology", "class", "bracket"}) {
			std::string a, b, c;
			run({cmd, path, "--jobs", "1"}, &a);
			run({cmd, path, "--jobs", "1"}, &b);
			run({cmd, path, "--jobs", "4"}, &c);
			CHECK(a == b);
			CHECK(a == c);
		}
}

TEST_CASE("json output parses")
{
	std::string out;
	CHECK(run({"atiyah", std::string(SHL_EXAMPLES) + "/delta-pair.shl", "--json"}, &out) == 0);
	auto j = nlohmann::json::parse(out);
	CHECK(j["command"] == "atiyah");
	CHECK(j["ok"] == true);
	CHECK(j["sections"].size() >= 1);
}
