#include "bellsim/circuit.h"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace bellsim {

namespace {

struct OpNameEntry {
    OpType type;
    const char *name;
};

constexpr OpNameEntry kOpNames[] = {
    {OpType::RZ, "RZ"},
    {OpType::RX, "RX"},
    {OpType::H, "H"},
    {OpType::S, "S"},
    {OpType::CNOT, "CNOT"},
    {OpType::CZ, "CZ"},
    {OpType::BELL, "BELL"},
    {OpType::MZ, "MZ"},
    {OpType::MX, "MX"},
    {OpType::MPP, "MPP"},
    {OpType::DEPOL1, "E_DEPOL1"},
    {OpType::DEPOL2, "E_DEPOL2"},
    {OpType::FLIPX, "E_FLIPX"},
    {OpType::FLIPZ, "E_FLIPZ"},
    {OpType::TICK, "TICK"},
    {OpType::DETECTOR, "DETECTOR"},
    {OpType::OBSERVABLE, "OBSERVABLE"},
};

std::string trim(const std::string &s) {
    size_t a = 0;
    size_t b = s.size();
    while (a < b && std::isspace(uint8_t(s[a]))) {
        a++;
    }
    while (b > a && std::isspace(uint8_t(s[b - 1]))) {
        b--;
    }
    return s.substr(a, b - a);
}

std::vector<std::string> split_ws(const std::string &s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) {
        out.push_back(tok);
    }
    return out;
}

std::vector<std::string> split_on(const std::string &s, char sep) {
    std::vector<std::string> out;
    size_t start = 0;
    while (true) {
        size_t pos = s.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(trim(s.substr(start)));
            return out;
        }
        out.push_back(trim(s.substr(start, pos - start)));
        start = pos + 1;
    }
}

uint32_t parse_u32(const std::string &tok, const char *what, size_t lineno) {
    size_t used = 0;
    unsigned long v = 0;
    try {
        v = std::stoul(tok, &used);
    } catch (const std::exception &) {
        throw std::invalid_argument(fmt::format("circuit line {}: bad {} '{}'", lineno, what, tok));
    }
    if (used != tok.size() || v > UINT32_MAX) {
        throw std::invalid_argument(fmt::format("circuit line {}: bad {} '{}'", lineno, what, tok));
    }
    return uint32_t(v);
}

double parse_prob(const std::string &tok, size_t lineno) {
    size_t used = 0;
    double v = 0;
    try {
        v = std::stod(tok, &used);
    } catch (const std::exception &) {
        throw std::invalid_argument(fmt::format("circuit line {}: bad probability '{}'", lineno, tok));
    }
    if (used != tok.size() || v < 0 || v > 1) {
        throw std::invalid_argument(fmt::format("circuit line {}: bad probability '{}'", lineno, tok));
    }
    return v;
}

uint32_t parse_record_ref(const std::string &tok, size_t lineno) {
    if (tok.size() < 6 || tok.substr(0, 4) != "rec[" || tok.back() != ']') {
        throw std::invalid_argument(fmt::format("circuit line {}: expected rec[k], got '{}'", lineno, tok));
    }
    return parse_u32(tok.substr(4, tok.size() - 5), "record index", lineno);
}

}  // namespace

const char *op_name(OpType type) {
    for (const auto &entry : kOpNames) {
        if (entry.type == type) {
            return entry.name;
        }
    }
    return "?";
}

bool op_is_measurement(OpType type) {
    return type == OpType::MZ || type == OpType::MX || type == OpType::MPP;
}

bool op_is_noise(OpType type) {
    return type == OpType::DEPOL1 || type == OpType::DEPOL2 || type == OpType::FLIPX ||
           type == OpType::FLIPZ;
}

size_t op_records_per_target(OpType type) {
    if (type == OpType::MZ || type == OpType::MX) {
        return 1;
    }
    return 0;
}

bool Operation::operator==(const Operation &other) const {
    return type == other.type && targets == other.targets && arg == other.arg &&
           pauli == other.pauli && records == other.records && basis == other.basis &&
           coords == other.coords && name == other.name;
}

std::string Operation::str() const {
    std::string out = op_name(type);
    switch (type) {
        case OpType::DETECTOR: {
            out += fmt::format("({}", basis);
            for (double c : coords) {
                out += fmt::format(", {}", c);
            }
            out += ")";
            break;
        }
        case OpType::OBSERVABLE:
            out += fmt::format("({})", name);
            break;
        default:
            if (arg != 0) {
                out += fmt::format("({})", arg);
            }
            break;
    }
    if (type == OpType::DETECTOR || type == OpType::OBSERVABLE) {
        for (uint32_t r : records) {
            out += fmt::format(" rec[{}]", r);
        }
        return out;
    }
    if (type == OpType::MPP) {
        out += " ";
        for (size_t i = 0; i < targets.size(); i++) {
            if (i) {
                out += "*";
            }
            out += fmt::format("{}{}", pauli[i], targets[i]);
        }
        return out;
    }
    for (uint32_t q : targets) {
        out += fmt::format(" {}", q);
    }
    return out;
}

size_t Circuit::num_measurements() const {
    size_t count = 0;
    for (const auto &op : ops) {
        if (op.type == OpType::MPP) {
            count++;
        } else {
            count += op_records_per_target(op.type) * op.targets.size();
        }
    }
    return count;
}

size_t Circuit::num_detectors() const {
    size_t count = 0;
    for (const auto &op : ops) {
        count += op.type == OpType::DETECTOR;
    }
    return count;
}

size_t Circuit::num_observables() const {
    size_t count = 0;
    for (const auto &op : ops) {
        count += op.type == OpType::OBSERVABLE;
    }
    return count;
}

std::vector<std::string> Circuit::observable_names() const {
    std::vector<std::string> names;
    for (const auto &op : ops) {
        if (op.type == OpType::OBSERVABLE) {
            names.push_back(op.name);
        }
    }
    return names;
}

void Circuit::validate() const {
    size_t records_so_far = 0;
    std::vector<std::string> seen_observables;
    for (size_t i = 0; i < ops.size(); i++) {
        const auto &op = ops[i];
        auto fail = [&](const std::string &msg) {
            throw std::invalid_argument(fmt::format("op {} ({}): {}", i, op_name(op.type), msg));
        };
        for (uint32_t q : op.targets) {
            if (q >= num_qubits) {
                fail(fmt::format("qubit {} out of range", q));
            }
        }
        switch (op.type) {
            case OpType::CNOT:
            case OpType::CZ:
            case OpType::BELL:
            case OpType::DEPOL2:
                if (op.targets.empty() || op.targets.size() % 2 != 0) {
                    fail("needs an even number of targets");
                }
                for (size_t j = 0; j < op.targets.size(); j += 2) {
                    if (op.targets[j] == op.targets[j + 1]) {
                        fail("pair uses the same qubit twice");
                    }
                }
                break;
            case OpType::MPP: {
                if (op.targets.empty() || op.pauli.size() != op.targets.size()) {
                    fail("needs one Pauli letter per target");
                }
                for (char letter : op.pauli) {
                    if (letter != 'X' && letter != 'Y' && letter != 'Z') {
                        fail("Pauli letters must be X, Y or Z");
                    }
                }
                auto sorted = op.targets;
                std::sort(sorted.begin(), sorted.end());
                if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
                    fail("repeated qubit in Pauli product");
                }
                break;
            }
            case OpType::TICK:
                if (!op.targets.empty()) {
                    fail("takes no targets");
                }
                break;
            case OpType::DETECTOR:
            case OpType::OBSERVABLE: {
                if (!op.targets.empty()) {
                    fail("takes record references, not qubits");
                }
                if (op.type == OpType::DETECTOR && op.basis != 'X' && op.basis != 'Z') {
                    fail("basis must be X or Z");
                }
                if (op.type == OpType::OBSERVABLE) {
                    if (op.name.empty()) {
                        fail("needs a name");
                    }
                    if (std::find(seen_observables.begin(), seen_observables.end(), op.name) !=
                        seen_observables.end()) {
                        fail(fmt::format("duplicate observable '{}'", op.name));
                    }
                    seen_observables.push_back(op.name);
                }
                auto sorted = op.records;
                std::sort(sorted.begin(), sorted.end());
                if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
                    fail("repeated record reference");
                }
                for (uint32_t r : op.records) {
                    if (r >= records_so_far) {
                        fail(fmt::format("rec[{}] is not available yet", r));
                    }
                }
                break;
            }
            default:
                if (op.targets.empty()) {
                    fail("needs at least one target");
                }
                break;
        }
        if (op.arg < 0 || op.arg > 1) {
            fail("probability out of range");
        }
        if (op.type == OpType::MPP) {
            records_so_far++;
        } else {
            records_so_far += op_records_per_target(op.type) * op.targets.size();
        }
    }
}

std::string Circuit::str() const {
    std::string out = fmt::format("QUBITS {}\n", num_qubits);
    for (const auto &op : ops) {
        out += op.str();
        out += "\n";
    }
    return out;
}

Circuit Circuit::from_text(const std::string &text) {
    Circuit circuit;
    bool have_qubits = false;
    std::istringstream in(text);
    std::string raw;
    size_t lineno = 0;
    while (std::getline(in, raw)) {
        lineno++;
        size_t hash = raw.find('#');
        if (hash != std::string::npos) {
            raw = raw.substr(0, hash);
        }
        std::string line = trim(raw);
        if (line.empty()) {
            continue;
        }

        size_t head_end = line.find_first_of(" \t(");
        std::string word = line.substr(0, head_end);
        std::string args;
        std::string rest;
        if (head_end != std::string::npos && line[head_end] == '(') {
            size_t close = line.find(')', head_end);
            if (close == std::string::npos) {
                throw std::invalid_argument(fmt::format("circuit line {}: missing ')'", lineno));
            }
            args = line.substr(head_end + 1, close - head_end - 1);
            rest = line.substr(close + 1);
        } else if (head_end != std::string::npos) {
            rest = line.substr(head_end);
        }

        if (word == "QUBITS") {
            if (have_qubits) {
                throw std::invalid_argument(fmt::format("circuit line {}: duplicate QUBITS", lineno));
            }
            auto toks = split_ws(rest);
            if (toks.size() != 1) {
                throw std::invalid_argument(fmt::format("circuit line {}: QUBITS takes one count", lineno));
            }
            circuit.num_qubits = parse_u32(toks[0], "qubit count", lineno);
            have_qubits = true;
            continue;
        }
        if (!have_qubits) {
            throw std::invalid_argument(fmt::format("circuit line {}: QUBITS must come first", lineno));
        }

        const OpNameEntry *entry = nullptr;
        for (const auto &candidate : kOpNames) {
            if (word == candidate.name) {
                entry = &candidate;
                break;
            }
        }
        if (entry == nullptr) {
            throw std::invalid_argument(fmt::format("circuit line {}: unknown operation '{}'", lineno, word));
        }

        Operation op;
        op.type = entry->type;
        auto tokens = split_ws(rest);
        switch (op.type) {
            case OpType::DETECTOR: {
                auto parts = split_on(args, ',');
                if (parts.empty() || parts[0].size() != 1) {
                    throw std::invalid_argument(
                        fmt::format("circuit line {}: DETECTOR needs a basis tag", lineno));
                }
                op.basis = parts[0][0];
                for (size_t i = 1; i < parts.size(); i++) {
                    size_t used = 0;
                    op.coords.push_back(std::stod(parts[i], &used));
                    if (used != parts[i].size()) {
                        throw std::invalid_argument(
                            fmt::format("circuit line {}: bad coordinate '{}'", lineno, parts[i]));
                    }
                }
                for (const auto &tok : tokens) {
                    op.records.push_back(parse_record_ref(tok, lineno));
                }
                break;
            }
            case OpType::OBSERVABLE: {
                op.name = trim(args);
                for (const auto &tok : tokens) {
                    op.records.push_back(parse_record_ref(tok, lineno));
                }
                break;
            }
            case OpType::MPP: {
                if (!args.empty()) {
                    op.arg = parse_prob(args, lineno);
                }
                if (tokens.size() != 1) {
                    throw std::invalid_argument(
                        fmt::format("circuit line {}: MPP takes one Pauli product", lineno));
                }
                for (const auto &term : split_on(tokens[0], '*')) {
                    if (term.size() < 2) {
                        throw std::invalid_argument(
                            fmt::format("circuit line {}: bad Pauli term '{}'", lineno, term));
                    }
                    op.pauli.push_back(term[0]);
                    op.targets.push_back(parse_u32(term.substr(1), "qubit", lineno));
                }
                break;
            }
            default: {
                if (!args.empty()) {
                    op.arg = parse_prob(args, lineno);
                }
                for (const auto &tok : tokens) {
                    op.targets.push_back(parse_u32(tok, "qubit", lineno));
                }
                break;
            }
        }
        circuit.ops.push_back(std::move(op));
    }
    if (!have_qubits) {
        throw std::invalid_argument("circuit is missing a QUBITS line");
    }
    try {
        circuit.validate();
    } catch (const std::invalid_argument &ex) {
        throw std::invalid_argument(fmt::format("circuit text: {}", ex.what()));
    }
    return circuit;
}

bool Circuit::operator==(const Circuit &other) const {
    return num_qubits == other.num_qubits && ops == other.ops;
}

Operation &Circuit::append(OpType type, std::vector<uint32_t> targets, double arg) {
    Operation op;
    op.type = type;
    op.targets = std::move(targets);
    op.arg = arg;
    ops.push_back(std::move(op));
    return ops.back();
}

void Circuit::append_detector(char basis, std::vector<uint32_t> records, std::vector<double> coords) {
    Operation op;
    op.type = OpType::DETECTOR;
    op.basis = basis;
    op.records = std::move(records);
    op.coords = std::move(coords);
    std::sort(op.records.begin(), op.records.end());
    ops.push_back(std::move(op));
}

void Circuit::append_observable(std::string name, std::vector<uint32_t> records) {
    Operation op;
    op.type = OpType::OBSERVABLE;
    op.name = std::move(name);
    op.records = std::move(records);
    std::sort(op.records.begin(), op.records.end());
    ops.push_back(std::move(op));
}

}  // namespace bellsim

