#pragma once

#include "asymconv/convolution_engine.hpp"
#include "asymconv/fiber_demo.hpp"
#include "asymconv/quadrature_oracle.hpp"

#include "json.hpp"

#include <string>
#include <string_view>

namespace asymconv {

using Json = nlohmann::json;

// Parses text as JSON; syntax errors become ParseError with line and column.
Json parse_json(std::string_view text, std::string_view source = "<input>");
Json read_json_file(const std::string& path);

Json to_json(const Rational& x);
Json to_json(const Complex& z);
Json to_json(const LogPolynomial& p);
Json to_json(const SingularTerm& t);
Json to_json(const Expansion& e);
Json to_json(const ExponentSetType& t);
Json to_json(const KernelSpec& s);
Json to_json(const CaseConstant& c);
Json to_json(const ConvolutionResult& r);
Json to_json(const VerificationReport& r);
Json to_json(const DemoReport& r);
Json to_json(const BernsteinCombination& b);

// Structural problems throw ParseError; value-range problems throw DomainError.
Rational rational_from_json(const Json& j);
Complex complex_from_json(const Json& j);
Expansion expansion_from_json(const Json& j);
ExponentSetType exponent_set_from_json(const Json& j);
KernelSpec kernel_spec_from_json(const Json& j);
std::vector<KernelSpec> kernel_specs_from_json(const Json& j);
std::set<Rational> root_set_from_json(const Json& j);

// Canonical text: sorted keys, two-space indent, trailing newline.
std::string dump(const Json& j);

std::string csv_header_verification();
std::string csv_row(const VerificationReport& r);
std::string csv_header_demo();
std::string csv_row(const DemoReport& r);

}  // namespace asymconv
