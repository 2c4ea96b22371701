#include "ri/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

namespace ri {

std::string format_double(double x) {
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc()) throw std::runtime_error("format_double failed");
    return std::string(buf, ptr);
}

std::string to_csv(const StepFunction& f) {
    std::ostringstream os;
    os << "breakpoint,value\n";
    for (std::size_t i = 0; i < f.piece_count(); ++i)
        os << format_double(f.piece_right(i)) << "," << format_double(f.piece_value(i)) << "\n";
    return os.str();
}

StepFunction step_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line.rfind("breakpoint,value", 0) != 0)
        throw std::invalid_argument("step CSV: expected header 'breakpoint,value'");
    std::vector<double> rights, vals;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("step CSV: malformed row '" + line + "'");
        auto parse = [&](const std::string& tok) {
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (ec != std::errc() || ptr != tok.data() + tok.size())
                throw std::invalid_argument("step CSV: bad number '" + tok + "'");
            return v;
        };
        rights.push_back(parse(line.substr(0, comma)));
        vals.push_back(parse(line.substr(comma + 1)));
    }
    if (rights.empty() || rights.back() != 1.0)
        throw std::invalid_argument("step CSV: final row must have breakpoint 1");
    rights.pop_back();  // implicit right endpoint 1
    return StepFunction(std::move(rights), std::move(vals));
}

StepFunction load_step_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open step CSV: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return step_from_csv(buf.str());
}

void save_step_csv(const StepFunction& f, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write step CSV: " + path);
    out << to_csv(f);
}

}  // namespace ri
