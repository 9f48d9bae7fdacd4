#include "asymconv/json_io.hpp"

#include "asymconv/errors.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace asymconv {

namespace {

[[noreturn]] void bad(const std::string& what) { throw ParseError(what); }

const Json& field(const Json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) bad(std::string("missing field \"") + key + "\"");
    return *it;
}

int int_field(const Json& obj, const char* key, std::optional<int> fallback = std::nullopt) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        if (fallback) return *fallback;
        bad(std::string("missing field \"") + key + "\"");
    }
    if (!it->is_number_integer()) bad(std::string("field \"") + key + "\" must be an integer");
    return it->get<int>();
}

void only_keys(const Json& obj, std::initializer_list<const char*> keys, const char* what) {
    if (!obj.is_object()) bad(std::string(what) + " must be a JSON object");
    for (const auto& [k, v] : obj.items()) {
        bool known = false;
        for (const char* x : keys) known = known || k == x;
        if (!known) bad(std::string("unknown field \"") + k + "\" in " + what);
    }
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

Json parse_json(std::string_view text, std::string_view source) {
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error& e) {
        std::size_t line = 1, col = 1;
        const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t i = 0; i < stop; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(std::string(source) + ":" + std::to_string(line) + ":" + std::to_string(col) +
                         ": malformed JSON");
    }
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_json(ss.str(), path);
}

Json to_json(const Rational& x) { return to_string(x); }

Json to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const LogPolynomial& p) {
    Json arr = Json::array();
    for (const auto& c : p.coefficients()) arr.push_back(to_json(c));
    return arr;
}

Json to_json(const SingularTerm& t) {
    Json j{{"r", to_json(t.r)}, {"m", t.m}, {"n", t.n}, {"log_coeffs", to_json(t.poly)}};
    if (t.cancellation) j["cancelled"] = true;
    return j;
}

Json to_json(const Expansion& e) {
    Json terms = Json::array();
    for (const auto& t : e.terms()) terms.push_back(to_json(t));
    return {{"terms", terms}, {"smooth_order", e.smooth_order()}};
}

Json to_json(const ExponentSetType& t) {
    Json j = Json::object();
    for (const auto& [alpha, mu] : t) j[to_string(alpha)] = mu;
    return j;
}

Json to_json(const KernelSpec& s) {
    return {{"a", to_json(s.a)}, {"b", to_json(s.b)}, {"p", s.p},   {"q", s.q},
            {"j", s.j},          {"k", s.k},          {"chirality", to_string(s.chirality2)}};
}

Json to_json(const CaseConstant& c) {
    return {{"case", to_string(c.tag)},
            {"degree", c.degree},
            {"raw", c.raw},
            {"normalization", c.normalization},
            {"leading_coeff", to_json(Complex(c.leading(), 0.0))}};
}

Json to_json(const ConvolutionResult& r) {
    return {{"case", to_string(r.tag)},
            {"degree", r.degree},
            {"leading_coeff", to_json(r.leading_coeff)},
            {"normalization", r.normalization},
            {"term", r.term ? to_json(*r.term) : Json(nullptr)}};
}

Json to_json(const VerificationReport& r) {
    return {{"spec", to_json(r.spec)},
            {"case", to_string(r.tag)},
            {"degree", r.degree},
            {"fitted_coeffs", to_json(r.fitted_coeffs)},
            {"fitted_leading", to_json(r.fitted_leading)},
            {"closed_form", to_json(r.closed_form)},
            {"raw_constant", r.raw_constant},
            {"relative_error", r.relative_error},
            {"condition_number", r.condition_number},
            {"residual", r.residual},
            {"normalization_used", r.normalization_used}};
}

Json to_json(const DemoReport& r) {
    return {{"n", r.n},
            {"m", r.m},
            {"case", to_string(r.tag)},
            {"degree", r.degree},
            {"predicted_exponent", to_json(r.predicted_exponent)},
            {"fitted_exponent", r.fitted_exponent ? Json(*r.fitted_exponent) : Json(nullptr)},
            {"fitted_coeffs", to_json(r.fitted_coeffs)},
            {"fitted_leading", to_json(r.fitted_leading)},
            {"predicted_leading", to_json(r.predicted_leading)},
            {"relative_error", r.relative_error},
            {"condition_number", r.condition_number},
            {"residual", r.residual}};
}

Json to_json(const BernsteinCombination& b) {
    auto arr = [](const std::set<Rational>& s) {
        Json a = Json::array();
        for (const auto& x : s) a.push_back(to_json(x));
        return a;
    };
    return {{"raw", arr(b.raw)}, {"canonical", arr(b.canonical)}, {"shifted", arr(b.shifted)}};
}

Rational rational_from_json(const Json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
    bad("rational must be a \"p/q\" string or an integer, got " + j.dump());
}

Complex complex_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        bad("complex value must be a [re, im] pair, got " + j.dump());
    return {j[0].get<double>(), j[1].get<double>()};
}

Expansion expansion_from_json(const Json& j) {
    only_keys(j, {"terms", "smooth_order"}, "expansion");
    const Json& terms = field(j, "terms");
    if (!terms.is_array()) bad("\"terms\" must be an array");
    std::vector<SingularTerm> out;
    for (const Json& t : terms) {
        only_keys(t, {"r", "m", "n", "log_coeffs", "cancelled"}, "term");
        SingularTerm st;
        st.r = rational_from_json(field(t, "r"));
        st.m = int_field(t, "m");
        st.n = int_field(t, "n");
        const Json& lc = field(t, "log_coeffs");
        if (!lc.is_array()) bad("\"log_coeffs\" must be an array");
        std::vector<Complex> cs;
        for (const Json& c : lc) cs.push_back(complex_from_json(c));
        st.poly = LogPolynomial(std::move(cs));
        if (auto it = t.find("cancelled"); it != t.end()) {
            if (!it->is_boolean()) bad("\"cancelled\" must be a boolean");
            st.cancellation = it->get<bool>();
        }
        validate(st);
        out.push_back(std::move(st));
    }
    const int order = int_field(j, "smooth_order");
    if (order < 0) throw DomainError("smooth_order must be >= 0");
    return Expansion(std::move(out), order);
}

ExponentSetType exponent_set_from_json(const Json& j) {
    if (!j.is_object()) bad("exponent set type must be a JSON object mapping \"p/q\" to a degree");
    ExponentSetType t;
    for (const auto& [k, v] : j.items()) {
        if (!v.is_number_integer()) bad("degree of " + k + " must be an integer");
        t[parse_rational(k)] = v.get<int>();
    }
    validate(t);
    return t;
}

KernelSpec kernel_spec_from_json(const Json& j) {
    only_keys(j, {"a", "b", "p", "q", "j", "k", "chirality"}, "kernel spec");
    KernelSpec s;
    s.a = rational_from_json(field(j, "a"));
    s.b = rational_from_json(field(j, "b"));
    s.p = int_field(j, "p", 0);
    s.q = int_field(j, "q", 0);
    s.j = int_field(j, "j", 0);
    s.k = int_field(j, "k", 0);
    if (auto it = j.find("chirality"); it != j.end()) {
        if (!it->is_string()) bad("\"chirality\" must be \"holo\" or \"anti\"");
        s.chirality2 = parse_chirality(it->get<std::string>());
    }
    return s;
}

std::vector<KernelSpec> kernel_specs_from_json(const Json& j) {
    if (!j.is_array()) bad("spec file must hold a JSON array of kernel specs");
    std::vector<KernelSpec> out;
    for (const Json& x : j) out.push_back(kernel_spec_from_json(x));
    return out;
}

std::set<Rational> root_set_from_json(const Json& j) {
    if (!j.is_array()) bad("root file must hold a JSON array of \"p/q\" strings");
    std::set<Rational> out;
    for (const Json& x : j) out.insert(rational_from_json(x));
    return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string csv_header_verification() {
    return "a,b,p,q,j,k,chirality,case,degree,fitted_re,fitted_im,closed_re,closed_im,relative_error,"
           "condition_number,normalization_used\n";
}

std::string csv_row(const VerificationReport& r) {
    std::ostringstream os;
    const auto& s = r.spec;
    os << to_string(s.a) << ',' << to_string(s.b) << ',' << s.p << ',' << s.q << ',' << s.j << ',' << s.k << ','
       << to_string(s.chirality2) << ',' << to_string(r.tag) << ',' << r.degree << ',' << fmt(r.fitted_leading.real())
       << ',' << fmt(r.fitted_leading.imag()) << ',' << fmt(r.closed_form.real()) << ',' << fmt(r.closed_form.imag())
       << ',' << fmt(r.relative_error) << ',' << fmt(r.condition_number) << ',' << fmt(r.normalization_used) << '\n';
    return os.str();
}

std::string csv_header_demo() {
    return "n,m,case,degree,predicted_exponent,fitted_exponent,fitted_re,fitted_im,predicted_re,predicted_im,"
           "relative_error,condition_number\n";
}

std::string csv_row(const DemoReport& r) {
    std::ostringstream os;
    os << r.n << ',' << r.m << ',' << to_string(r.tag) << ',' << r.degree << ',' << to_string(r.predicted_exponent)
       << ',' << (r.fitted_exponent ? fmt(*r.fitted_exponent) : std::string()) << ',' << fmt(r.fitted_leading.real())
       << ',' << fmt(r.fitted_leading.imag()) << ',' << fmt(r.predicted_leading.real()) << ','
       << fmt(r.predicted_leading.imag()) << ',' << fmt(r.relative_error) << ',' << fmt(r.condition_number) << '\n';
    return os.str();
}

}  // namespace asymconv
