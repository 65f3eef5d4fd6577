#pragma once

// Arithmetic circuits over the run's prime field: one input wire per
// party, Add / ScalarMul / Mul gates, and exactly one Output gate naming
// the public result.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "aempc/field.hpp"

namespace aempc {

struct Gate {
    enum class Op { Add, ScalarMul, Mul, Output };

    Op op = Op::Add;
    int a = 0;            // wire index
    int b = 0;            // wire index (Add / Mul)
    uint64_t scalar = 0;  // ScalarMul only

    static const char* op_name(Op op) {
        switch (op) {
            case Op::Add: return "add";
            case Op::ScalarMul: return "scalar_mul";
            case Op::Mul: return "mul";
            case Op::Output: return "output";
        }
        return "?";
    }
};

// Wire numbering: wires 0..n-1 are the party inputs; gate g defines wire
// n + g. The Output gate defines no wire.
struct CircuitDescription {
    int num_inputs = 0;
    std::vector<Gate> gates;

    void validate() const {
        if (num_inputs < 1) throw std::invalid_argument("circuit: needs at least one input");
        int outputs = 0;
        for (size_t g = 0; g < gates.size(); ++g) {
            const int defined_before = num_inputs + static_cast<int>(g);
            const Gate& gate = gates[g];
            auto check_wire = [&](int w) {
                if (w < 0 || w >= defined_before) {
                    throw std::invalid_argument("circuit: gate " + std::to_string(g) +
                                                " references undefined wire");
                }
            };
            switch (gate.op) {
                case Gate::Op::Add:
                case Gate::Op::Mul:
                    check_wire(gate.a);
                    check_wire(gate.b);
                    break;
                case Gate::Op::ScalarMul:
                case Gate::Op::Output:
                    check_wire(gate.a);
                    break;
            }
            if (gate.op == Gate::Op::Output) ++outputs;
        }
        if (outputs != 1) throw std::invalid_argument("circuit: exactly one output gate required");
        if (gates.back().op != Gate::Op::Output) {
            throw std::invalid_argument("circuit: output gate must come last");
        }
    }

    bool has_mul() const {
        for (const Gate& g : gates) {
            if (g.op == Gate::Op::Mul) return true;
        }
        return false;
    }

    int output_wire() const { return gates.back().a; }
};

// Cleartext evaluation; the oracle every protocol output is checked
// against.
inline FieldElement evaluate_circuit(const CircuitDescription& circuit,
                                     const std::vector<FieldElement>& inputs) {
    if (static_cast<int>(inputs.size()) != circuit.num_inputs) {
        throw std::invalid_argument("evaluate_circuit: input count mismatch");
    }
    const uint64_t p = inputs.at(0).modulus;
    std::vector<FieldElement> wires = inputs;
    for (const Gate& g : circuit.gates) {
        switch (g.op) {
            case Gate::Op::Add:
                wires.push_back(wires[static_cast<size_t>(g.a)] + wires[static_cast<size_t>(g.b)]);
                break;
            case Gate::Op::ScalarMul:
                wires.push_back(wires[static_cast<size_t>(g.a)] * FieldElement(g.scalar, p));
                break;
            case Gate::Op::Mul:
                wires.push_back(wires[static_cast<size_t>(g.a)] * wires[static_cast<size_t>(g.b)]);
                break;
            case Gate::Op::Output:
                return wires[static_cast<size_t>(g.a)];
        }
    }
    throw std::logic_error("evaluate_circuit: no output gate");
}

// n-party sum, the workhorse test circuit.
inline CircuitDescription sum_circuit(int n) {
    CircuitDescription c;
    c.num_inputs = n;
    int acc = 0;
    for (int i = 1; i < n; ++i) {
        c.gates.push_back(Gate{Gate::Op::Add, acc, i, 0});
        acc = n + static_cast<int>(c.gates.size()) - 1;
    }
    c.gates.push_back(Gate{Gate::Op::Output, acc, 0, 0});
    return c;
}

}  // namespace aempc
