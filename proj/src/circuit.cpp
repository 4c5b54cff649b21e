#include "qwr/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace qwr {

Circuit::Circuit(int width) : width_(width) {
    if (width < 1) throw std::invalid_argument("Circuit: width must be positive");
}

void Circuit::add(Gate g) {
    const int n = g.arity();
    for (int i = 0; i < n; ++i) {
        if (g.q[i] < 0 || g.q[i] >= width_)
            throw std::out_of_range("Circuit::add: qubit index out of range");
        for (int j = i + 1; j < n; ++j)
            if (g.q[i] == g.q[j]) throw std::invalid_argument("Circuit::add: duplicate qubit");
    }
    if (g.kind == GateKind::OneQubit && mat2_unitarity_error(g.u) > 1e-12)
        throw std::invalid_argument("Circuit::add: non-unitary one-qubit matrix");
    gates_.push_back(std::move(g));
}

void Circuit::append(const Circuit& other) {
    if (other.width_ != width_) throw std::invalid_argument("Circuit::append: width mismatch");
    gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
}

Circuit Circuit::adjoint() const {
    Circuit out(width_);
    out.gates_.reserve(gates_.size());
    for (auto it = gates_.rbegin(); it != gates_.rend(); ++it)
        out.gates_.push_back(it->adjoint());
    return out;
}

void Circuit::apply(StateVector& state) const {
    if (state.num_qubits() != width_)
        throw std::invalid_argument("Circuit::apply: state width mismatch");
    for (const Gate& g : gates_) apply_gate(state, g);
}

GateCount Circuit::count_gates() const {
    GateCount c;
    for (const Gate& g : gates_) {
        switch (g.kind) {
            case GateKind::OneQubit: ++c.one_qubit; break;
            case GateKind::ControlledPhase: ++c.controlled_phase; break;
            case GateKind::ControlledNot: ++c.controlled_not; break;
            case GateKind::Toffoli: ++c.toffoli; break;
            case GateKind::Swap: ++c.swap; break;
        }
    }
    return c;
}

DenseMatrix circuit_to_matrix(const Circuit& c) {
    if (c.width() > 14) throw std::invalid_argument("circuit_to_matrix: width > 14");
    const std::uint64_t dim = std::uint64_t(1) << c.width();
    DenseMatrix m(dim);
    for (std::uint64_t j = 0; j < dim; ++j) {
        StateVector col = StateVector::basis_state(c.width(), j);
        c.apply(col);
        for (std::uint64_t i = 0; i < dim; ++i) m(i, j) = col[i];
    }
    return m;
}

namespace {

void print_angle(std::ostream& os, double a) {
    os << ' ' << std::setprecision(17) << a;
}

bool near(const cplx& a, double re, double im = 0.0) {
    return std::abs(a - cplx(re, im)) < 1e-15;
}

// Recognizes the named one-qubit forms so the text format stays one angle
// per line; anything else is written as a full U1 matrix.
void write_one_qubit(std::ostream& os, const Gate& g) {
    const Mat2& u = g.u;
    if (near(u[0], 0) && near(u[1], 1) && near(u[2], 1) && near(u[3], 0)) {
        os << "X " << g.q[0];
        return;
    }
    const bool real = std::abs(u[0].imag()) < 1e-15 && std::abs(u[1].imag()) < 1e-15 &&
                      std::abs(u[2].imag()) < 1e-15 && std::abs(u[3].imag()) < 1e-15;
    if (near(u[0], 1) && near(u[1], 0) && near(u[2], 0)) {
        os << "PHASE " << g.q[0];
        print_angle(os, std::arg(u[3]));
        return;
    }
    if (real && std::abs(u[1].real() - u[2].real()) < 1e-15 &&
        std::abs(u[0].real() + u[3].real()) < 1e-15) {
        os << "REFL " << g.q[0];
        print_angle(os, std::atan2(u[0].real(), u[1].real()));
        return;
    }
    if (real && std::abs(u[0].real() - u[3].real()) < 1e-15 &&
        std::abs(u[1].real() + u[2].real()) < 1e-15) {
        os << "ROT " << g.q[0];
        print_angle(os, std::atan2(u[2].real(), u[0].real()));
        return;
    }
    os << "U1 " << g.q[0] << std::setprecision(17);
    for (int i = 0; i < 4; ++i) os << ' ' << u[i].real() << ' ' << u[i].imag();
}

} // namespace

void write_circuit(std::ostream& os, const Circuit& c) {
    os << "width=" << c.width() << '\n';
    for (const Gate& g : c.gates()) {
        if (g.is_perturbed())
            throw std::invalid_argument("write_circuit: perturbed gates are not exportable");
        switch (g.kind) {
            case GateKind::OneQubit: write_one_qubit(os, g); break;
            case GateKind::ControlledPhase:
                os << "CPHASE " << g.q[0] << ' ' << g.q[1];
                print_angle(os, g.angle);
                break;
            case GateKind::ControlledNot: os << "CNOT " << g.q[0] << ' ' << g.q[1]; break;
            case GateKind::Toffoli:
                os << "TOFFOLI " << g.q[0] << ' ' << g.q[1] << ' ' << g.q[2];
                break;
            case GateKind::Swap: os << "SWAP " << g.q[0] << ' ' << g.q[1]; break;
        }
        os << '\n';
    }
}

Circuit read_circuit(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("width=", 0) != 0)
        throw std::runtime_error("read_circuit: missing width header");
    const int width = std::stoi(line.substr(6));
    Circuit c(width);
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::string kind;
        ss >> kind;
        auto want = [&](int n, double* angle) {
            int q[3] = {-1, -1, -1};
            for (int i = 0; i < n; ++i)
                if (!(ss >> q[i])) throw std::runtime_error("read_circuit: bad line: " + line);
            if (angle && !(ss >> *angle))
                throw std::runtime_error("read_circuit: missing angle: " + line);
            return std::array<int, 3>{q[0], q[1], q[2]};
        };
        double a = 0.0;
        if (kind == "X") {
            auto q = want(1, nullptr);
            c.add(Gate::x(q[0]));
        } else if (kind == "PHASE") {
            auto q = want(1, &a);
            c.add(Gate::phase(q[0], a));
        } else if (kind == "REFL") {
            auto q = want(1, &a);
            c.add(Gate::refl(q[0], a));
        } else if (kind == "ROT") {
            auto q = want(1, &a);
            c.add(Gate::rot(q[0], a));
        } else if (kind == "U1") {
            int t;
            if (!(ss >> t)) throw std::runtime_error("read_circuit: bad line: " + line);
            Mat2 u;
            for (int i = 0; i < 4; ++i) {
                double re, im;
                if (!(ss >> re >> im)) throw std::runtime_error("read_circuit: bad U1: " + line);
                u[i] = cplx(re, im);
            }
            c.add(Gate::one_qubit(t, u));
        } else if (kind == "CPHASE") {
            auto q = want(2, &a);
            c.add(Gate::cphase(q[0], q[1], a));
        } else if (kind == "CNOT") {
            auto q = want(2, nullptr);
            c.add(Gate::cnot(q[0], q[1]));
        } else if (kind == "TOFFOLI") {
            auto q = want(3, nullptr);
            c.add(Gate::toffoli(q[0], q[1], q[2]));
        } else if (kind == "SWAP") {
            auto q = want(2, nullptr);
            c.add(Gate::swap(q[0], q[1]));
        } else {
            throw std::runtime_error("read_circuit: unknown gate kind '" + kind + "'");
        }
    }
    return c;
}

std::string circuit_to_text(const Circuit& c) {
    std::ostringstream os;
    write_circuit(os, c);
    return os.str();
}

Circuit circuit_from_text(const std::string& text) {
    std::istringstream is(text);
    return read_circuit(is);
}

} // namespace qwr
