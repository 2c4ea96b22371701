#include "ri/norm_spec.hpp"

#include <charconv>
#include <cmath>

namespace ri {

namespace {

double parse_number(const std::string& s, std::size_t offset, std::size_t len) {
    std::string tok = s.substr(offset, len);
    if (tok == "inf") return kInf;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
        throw NormSpecError("expected a number or 'inf', got '" + tok + "'", offset);
    return value;
}

NormFunctional parse_at(const std::string& s, std::size_t base);

NormFunctional parse_lz(const std::string& s, std::size_t base, const std::string& body) {
    double vals[4] = {0, 0, 0, 0};
    std::size_t n = 0;
    std::size_t start = 0;
    while (start <= body.size()) {
        std::size_t comma = body.find(',', start);
        std::size_t end = comma == std::string::npos ? body.size() : comma;
        if (n >= 4) throw NormSpecError("too many Lorentz-Zygmund parameters", base + start);
        vals[n++] = parse_number(s, base + start, end - start);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (n < 2) throw NormSpecError("LZ needs at least p and q", base);
    return NormFunctional::lorentz_zygmund(vals[0], vals[1], vals[2], vals[3]);
}

NormFunctional parse_at(const std::string& s, std::size_t base) {
    std::string body = s.substr(base);
    auto starts = [&](const char* prefix) { return body.rfind(prefix, 0) == 0; };
    try {
        if (starts("Lp:"))
            return NormFunctional::lp(parse_number(s, base + 3, body.size() - 3));
        if (starts("LZ:")) return parse_lz(s, base + 3, body.substr(3));
        if (starts("Lambda:"))
            return NormFunctional::lambda(parse_profile_spec(body.substr(7)));
        if (starts("mI:")) return NormFunctional::small_m(parse_profile_spec(body.substr(3)));
        if (starts("MI:")) return NormFunctional::big_m(parse_profile_spec(body.substr(3)));
        if (body == "weakL1") return NormFunctional::weak_l1();
        if (starts("Z:")) {
            std::size_t at = body.rfind('@');
            if (at == std::string::npos || at < 2)
                throw NormSpecError("Z-norm needs '<norm>@<profile>'", base + body.size());
            std::string inner = s.substr(base + 2, at - 2);
            (void)inner;
            NormFunctional inner_norm = parse_at(s.substr(0, base + at), base + 2);
            return NormFunctional::z_norm(inner_norm, parse_profile_spec(body.substr(at + 1)));
        }
    } catch (const NormSpecError&) {
        throw;
    } catch (const std::exception& e) {
        throw NormSpecError(e.what(), base);
    }
    throw NormSpecError("unknown norm spec '" + body + "'", base);
}

}  // namespace

NormFunctional parse_norm_spec(const std::string& spec) {
    if (spec.empty()) throw NormSpecError("empty norm spec", 0);
    return parse_at(spec, 0);
}

}  // namespace ri
