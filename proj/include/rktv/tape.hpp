#pragma once

// Reverse-mode tape over jet-valued scalars. The forward pass records
// elementary operations (add, mul, sin, fused affine) whose values are
// second-order jets in time; backward() then accumulates the gradient of a
// scalar root with respect to every parameter leaf. Adjoints are jets too:
// a node's value, d1 and d2 components each receive their own adjoint, so
// losses may freely mix state values with first/second time derivatives.
//
// Accumulation runs in reverse creation order, which is a fixed topological
// order — gradients are bit-reproducible for identical graphs.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rktv/errors.hpp"
#include "rktv/jet.hpp"

namespace rktv::ad {

class Tape {
  public:
    using NodeId = std::int32_t;

    NodeId constant(double c) { return push(Op::Constant, Jet{c}, -1, -1); }

    // Trainable leaf; gradient slot allocated in creation order.
    NodeId parameter(double value) {
        const int ordinal = static_cast<int>(num_params_++);
        return push(Op::Parameter, Jet{value}, ordinal, -1);
    }

    // Non-trainable leaf carrying time derivatives (e.g. the time input).
    NodeId input(const Jet& j) { return push(Op::Input, j, -1, -1); }

    NodeId add(NodeId a, NodeId b) { return push(Op::Add, val(a) + val(b), a, b); }
    NodeId sub(NodeId a, NodeId b) { return push(Op::Sub, val(a) - val(b), a, b); }
    NodeId mul(NodeId a, NodeId b) { return push(Op::Mul, val(a) * val(b), a, b); }

    NodeId scale(double c, NodeId a) {
        NodeId id = push(Op::Scale, c * val(a), a, -1);
        nodes_[id].aux = c;
        return id;
    }

    NodeId sin(NodeId a) { return push(Op::Sin, ad::sin(val(a)), a, -1); }

    // Extract a jet component as a plain scalar node (used when a loss mixes
    // values with time derivatives). The result carries no time derivatives
    // of its own.
    NodeId first_deriv(NodeId a) { return push(Op::D1, Jet{val(a).d1}, a, -1); }
    NodeId second_deriv(NodeId a) { return push(Op::D2, Jet{val(a).d2}, a, -1); }

    // Fused dot product: sum_i w[i]*z[i] + bias. Both factors are nodes.
    NodeId affine(std::span<const NodeId> w, std::span<const NodeId> z, NodeId bias) {
        if (w.size() != z.size()) throw Error("affine: weight/input arity mismatch");
        Jet out = val(bias);
        const auto begin = static_cast<std::int32_t>(extras_.size());
        for (std::size_t i = 0; i < w.size(); ++i) {
            out = out + val(w[i]) * val(z[i]);
            extras_.push_back(w[i]);
            extras_.push_back(z[i]);
        }
        NodeId id = push(Op::Affine, out, bias, -1);
        nodes_[id].extra_begin = begin;
        nodes_[id].extra_count = static_cast<std::int32_t>(2 * w.size());
        return id;
    }

    // Fused n-ary sum.
    NodeId sum(std::span<const NodeId> terms) {
        Jet out;
        const auto begin = static_cast<std::int32_t>(extras_.size());
        for (NodeId t : terms) {
            out = out + val(t);
            extras_.push_back(t);
        }
        NodeId id = push(Op::Sum, out, -1, -1);
        nodes_[id].extra_begin = begin;
        nodes_[id].extra_count = static_cast<std::int32_t>(terms.size());
        return id;
    }

    const Jet& val(NodeId id) const { return nodes_[static_cast<std::size_t>(id)].val; }
    std::size_t size() const { return nodes_.size(); }
    std::size_t num_parameters() const { return num_params_; }

    // Gradient of the scalar root with respect to every parameter leaf, in
    // parameter creation order. Parameters not reachable from root get 0.
    std::vector<double> backward(NodeId root) const {
        const Jet& r = val(root);
        if (!is_finite(r)) throw Error("backward: root value is not finite");

        std::vector<Jet> adj(nodes_.size());
        adj[static_cast<std::size_t>(root)] = Jet{1.0, 0.0, 0.0};
        std::vector<double> grad(num_params_, 0.0);

        for (std::int32_t i = root; i >= 0; --i) {
            const Node& n = nodes_[static_cast<std::size_t>(i)];
            const Jet g = adj[static_cast<std::size_t>(i)];
            if (g.v == 0.0 && g.d1 == 0.0 && g.d2 == 0.0) continue;
            switch (n.op) {
                case Op::Constant:
                case Op::Input:
                    break;
                case Op::Parameter:
                    // A parameter's d1/d2 are structurally zero; only the value
                    // component carries gradient.
                    grad[static_cast<std::size_t>(n.a)] += g.v;
                    break;
                case Op::Add:
                    accumulate(adj, n.a, g);
                    accumulate(adj, n.b, g);
                    break;
                case Op::Sub:
                    accumulate(adj, n.a, g);
                    accumulate(adj, n.b, Jet{-g.v, -g.d1, -g.d2});
                    break;
                case Op::Mul:
                    pullback_product(adj, n.a, val(n.b), g);
                    pullback_product(adj, n.b, val(n.a), g);
                    break;
                case Op::Scale:
                    accumulate(adj, n.a, Jet{n.aux * g.v, n.aux * g.d1, n.aux * g.d2});
                    break;
                case Op::Sin:
                    pullback_sin(adj, n.a, g);
                    break;
                case Op::Affine: {
                    accumulate(adj, n.a, g);  // bias
                    for (std::int32_t e = 0; e < n.extra_count; e += 2) {
                        const NodeId w = extras_[static_cast<std::size_t>(n.extra_begin + e)];
                        const NodeId z = extras_[static_cast<std::size_t>(n.extra_begin + e + 1)];
                        pullback_product(adj, w, val(z), g);
                        pullback_product(adj, z, val(w), g);
                    }
                    break;
                }
                case Op::Sum:
                    for (std::int32_t e = 0; e < n.extra_count; ++e)
                        accumulate(adj, extras_[static_cast<std::size_t>(n.extra_begin + e)], g);
                    break;
            }
        }

        for (std::size_t p = 0; p < grad.size(); ++p) {
            if (!std::isfinite(grad[p]))
                throw Error("backward: non-finite gradient for parameter " + std::to_string(p));
        }
        return grad;
    }

  private:
    enum class Op : std::uint8_t {
        Constant,
        Parameter,
        Input,
        Add,
        Sub,
        Mul,
        Scale,
        Sin,
        Affine,
        Sum
    };

    struct Node {
        Op op;
        Jet val;
        std::int32_t a = -1;
        std::int32_t b = -1;
        std::int32_t extra_begin = 0;
        std::int32_t extra_count = 0;
        double aux = 0.0;
    };

    NodeId push(Op op, const Jet& v, std::int32_t a, std::int32_t b) {
        nodes_.push_back(Node{op, v, a, b, 0, 0, 0.0});
        return static_cast<NodeId>(nodes_.size() - 1);
    }

    static void accumulate(std::vector<Jet>& adj, NodeId id, const Jet& g) {
        Jet& a = adj[static_cast<std::size_t>(id)];
        a.v += g.v;
        a.d1 += g.d1;
        a.d2 += g.d2;
    }

    // Adjoint of one factor of a jet product, given the other factor's value.
    static void pullback_product(std::vector<Jet>& adj, NodeId id, const Jet& other,
                                 const Jet& g) {
        Jet& a = adj[static_cast<std::size_t>(id)];
        a.v += g.v * other.v + g.d1 * other.d1 + g.d2 * other.d2;
        a.d1 += g.d1 * other.v + 2.0 * g.d2 * other.d1;
        a.d2 += g.d2 * other.v;
    }

    void pullback_sin(std::vector<Jet>& adj, NodeId id, const Jet& g) const {
        const Jet& x = val(id);
        const double s = std::sin(x.v);
        const double c = std::cos(x.v);
        Jet& a = adj[static_cast<std::size_t>(id)];
        a.v += g.v * c + g.d1 * (-s * x.d1) + g.d2 * (-c * x.d1 * x.d1 - s * x.d2);
        a.d1 += g.d1 * c + g.d2 * (-2.0 * s * x.d1);
        a.d2 += g.d2 * c;
    }

    std::vector<Node> nodes_;
    std::vector<NodeId> extras_;
    std::size_t num_params_ = 0;
};

}  // namespace rktv::ad
