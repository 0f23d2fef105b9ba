#include "acdc/matpower.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace acdc {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Matrix {
    std::vector<std::vector<double>> rows;
    int first_line = 0;
};

struct Scanner {
    const std::string& text;
    size_t pos = 0;
    int line = 1;

    bool eof() const { return pos >= text.size(); }

    char peek() const { return text[pos]; }

    void advance() {
        if (text[pos] == '\n') ++line;
        ++pos;
    }

    void skip_ws_and_comments() {
        while (!eof()) {
            char c = peek();
            if (c == '%') {
                while (!eof() && peek() != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line); }
};

double parse_number(Scanner& s) {
    s.skip_ws_and_comments();
    size_t start = s.pos;
    if (!s.eof() && (s.peek() == '+' || s.peek() == '-')) s.advance();
    bool digits = false;
    while (!s.eof() && (std::isdigit(static_cast<unsigned char>(s.peek())) || s.peek() == '.')) {
        digits = true;
        s.advance();
    }
    if (!s.eof() && (s.peek() == 'e' || s.peek() == 'E')) {
        s.advance();
        if (!s.eof() && (s.peek() == '+' || s.peek() == '-')) s.advance();
        while (!s.eof() && std::isdigit(static_cast<unsigned char>(s.peek()))) s.advance();
    }
    if (!digits) s.fail("expected a number");
    double value = 0.0;
    auto res = std::from_chars(s.text.data() + start, s.text.data() + s.pos, value);
    if (res.ec != std::errc{}) s.fail("malformed number");
    return value;
}

Matrix parse_matrix(Scanner& s) {
    s.skip_ws_and_comments();
    if (s.eof() || s.peek() != '[') s.fail("expected '['");
    Matrix m;
    m.first_line = s.line;
    s.advance();
    std::vector<double> row;
    while (true) {
        s.skip_ws_and_comments();
        if (s.eof()) s.fail("unterminated matrix");
        char c = s.peek();
        if (c == ']') {
            s.advance();
            if (!row.empty()) m.rows.push_back(std::move(row));
            break;
        }
        if (c == ';' || c == '\n') {
            s.advance();
            if (!row.empty()) {
                m.rows.push_back(std::move(row));
                row.clear();
            }
            continue;
        }
        if (c == ',') {
            s.advance();
            continue;
        }
        row.push_back(parse_number(s));
    }
    return m;
}

bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
}

double col(const std::vector<double>& row, size_t idx, double fallback) {
    return idx < row.size() ? row[idx] : fallback;
}

}  // namespace

NetworkCase parse_matpower_case(const std::string& text, std::vector<std::string>* warnings) {
    Scanner s{text};
    std::optional<double> base_mva;
    std::optional<Matrix> bus_m, gen_m, branch_m;

    while (true) {
        s.skip_ws_and_comments();
        if (s.eof()) break;
        // Read one identifier token.
        size_t start = s.pos;
        while (!s.eof() && is_ident_char(s.peek())) s.advance();
        if (s.pos == start) {
            s.advance();  // stray punctuation, e.g. trailing ';'
            continue;
        }
        std::string ident = text.substr(start, s.pos - start);
        if (ident == "function") {
            while (!s.eof() && s.peek() != '\n' && s.peek() != ';') s.advance();
            continue;
        }
        s.skip_ws_and_comments();
        if (s.eof() || s.peek() != '=') continue;
        s.advance();  // '='
        if (ident == "mpc.baseMVA") {
            base_mva = parse_number(s);
        } else if (ident == "mpc.bus") {
            bus_m = parse_matrix(s);
        } else if (ident == "mpc.gen") {
            gen_m = parse_matrix(s);
        } else if (ident == "mpc.branch") {
            branch_m = parse_matrix(s);
        } else {
            // Unsupported assignment (gencost, version string, ...): skip its value.
            if (warnings && ident.rfind("mpc.", 0) == 0 && ident != "mpc.version")
                warnings->push_back("ignored unsupported section " + ident);
            s.skip_ws_and_comments();
            if (!s.eof() && s.peek() == '[') {
                parse_matrix(s);
            } else {
                while (!s.eof() && s.peek() != ';' && s.peek() != '\n') s.advance();
            }
        }
    }

    if (!base_mva) throw ParseError("missing mpc.baseMVA");
    if (*base_mva <= 0.0) throw ParseError("baseMVA must be positive");
    if (!bus_m) throw ParseError("missing mpc.bus matrix");
    if (!gen_m) throw ParseError("missing mpc.gen matrix");
    if (!branch_m) throw ParseError("missing mpc.branch matrix");

    NetworkCase net;
    net.base_mva = *base_mva;
    const double sb = net.base_mva;

    std::unordered_set<int> seen;
    int line = bus_m->first_line;
    for (const auto& row : bus_m->rows) {
        ++line;
        if (row.size() < 10) throw ParseError("bus row needs at least 10 columns", line);
        BusRecord b;
        b.id = static_cast<int>(row[0]);
        if (!seen.insert(b.id).second)
            throw ParseError("duplicate bus id " + std::to_string(b.id), line);
        int type = static_cast<int>(row[1]);
        switch (type) {
            case 1: b.kind = BusKind::PQ; break;
            case 2: b.kind = BusKind::PV; break;
            case 3: b.kind = BusKind::Slack; break;
            default:
                throw ParseError("unsupported bus type " + std::to_string(type) + " at bus " +
                                     std::to_string(b.id),
                                 line);
        }
        b.p_load = row[2] / sb;
        b.q_load = row[3] / sb;
        b.g_shunt = row[4] / sb;
        b.b_shunt = row[5] / sb;
        b.v_init = row[7] > 0.0 ? row[7] : 1.0;
        b.theta_init = row[8] * kPi / 180.0;
        b.base_kv = row[9];
        net.buses.push_back(b);
    }

    std::unordered_map<int, int> bus_of;
    for (size_t i = 0; i < net.buses.size(); ++i) bus_of[net.buses[i].id] = static_cast<int>(i);

    line = gen_m->first_line;
    for (const auto& row : gen_m->rows) {
        ++line;
        if (row.size() < 8) throw ParseError("gen row needs at least 8 columns", line);
        GeneratorRecord g;
        g.bus = static_cast<int>(row[0]);
        if (!bus_of.count(g.bus))
            throw ParseError("generator references unknown bus " + std::to_string(g.bus), line);
        g.p_set = row[1] / sb;
        g.q_max = row[3] / sb;
        g.q_min = row[4] / sb;
        g.v_set = row[5] > 0.0 ? row[5] : 1.0;
        g.in_service = row[7] > 0.0;
        if (g.q_min > g.q_max)
            throw ParseError("generator at bus " + std::to_string(g.bus) + " has q_min > q_max",
                             line);
        net.generators.push_back(g);
    }

    line = branch_m->first_line;
    for (const auto& row : branch_m->rows) {
        ++line;
        if (row.size() < 11) throw ParseError("branch row needs at least 11 columns", line);
        BranchRecord br;
        br.from = static_cast<int>(row[0]);
        br.to = static_cast<int>(row[1]);
        if (!bus_of.count(br.from))
            throw ParseError("branch references unknown bus " + std::to_string(br.from), line);
        if (!bus_of.count(br.to))
            throw ParseError("branch references unknown bus " + std::to_string(br.to), line);
        br.r = row[2];
        br.x = row[3];
        br.b_charging = row[4];
        br.tap = row[8] != 0.0 ? row[8] : 1.0;
        br.shift = row[9] * kPi / 180.0;
        br.in_service = col(row, 10, 1.0) > 0.0;
        if (br.in_service && br.r == 0.0 && br.x == 0.0)
            throw ParseError("in-service branch " + std::to_string(br.from) + "-" +
                                 std::to_string(br.to) + " has zero impedance",
                             line);
        net.branches.push_back(br);
    }

    bool slack_gen = false;
    for (const auto& g : net.generators) {
        if (!g.in_service) continue;
        if (net.buses[bus_of[g.bus]].kind == BusKind::Slack) slack_gen = true;
    }
    if (!slack_gen) throw ParseError("no slack generator");

    return net;
}

std::string write_matpower_case(const NetworkCase& net) {
    std::ostringstream out;
    out.precision(17);
    const double sb = net.base_mva;
    out << "function mpc = acdc_case\n";
    out << "mpc.version = '2';\n";
    out << "mpc.baseMVA = " << sb << ";\n";
    out << "mpc.bus = [\n";
    for (const auto& b : net.buses) {
        int type = b.kind == BusKind::PQ ? 1 : (b.kind == BusKind::PV ? 2 : 3);
        out << "\t" << b.id << "\t" << type << "\t" << b.p_load * sb << "\t" << b.q_load * sb
            << "\t" << b.g_shunt * sb << "\t" << b.b_shunt * sb << "\t1\t" << b.v_init << "\t"
            << b.theta_init * 180.0 / kPi << "\t" << b.base_kv << "\t1\t1.1\t0.9;\n";
    }
    out << "];\n";
    out << "mpc.gen = [\n";
    for (const auto& g : net.generators) {
        out << "\t" << g.bus << "\t" << g.p_set * sb << "\t0\t" << g.q_max * sb << "\t"
            << g.q_min * sb << "\t" << g.v_set << "\t" << sb << "\t" << (g.in_service ? 1 : 0)
            << "\t0\t0;\n";
    }
    out << "];\n";
    out << "mpc.branch = [\n";
    for (const auto& br : net.branches) {
        out << "\t" << br.from << "\t" << br.to << "\t" << br.r << "\t" << br.x << "\t"
            << br.b_charging << "\t0\t0\t0\t" << (br.tap == 1.0 ? 0.0 : br.tap) << "\t"
            << br.shift * 180.0 / kPi << "\t" << (br.in_service ? 1 : 0) << "\t-360\t360;\n";
    }
    out << "];\n";
    return out.str();
}

}  // namespace acdc
