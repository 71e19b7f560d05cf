#include <gtest/gtest.h>

#include <set>
#include <stdexcept>

#include "elements/ecss.hpp"
#include "support/oracles.hpp"

using namespace elements;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an Error";
    return ErrorCode::InvalidArgument;
}

struct OrderVisitor : Visitor {
    std::vector<EntityId> entities;
    std::vector<std::pair<EntityId, ComponentKind>> components;

    void visit_entity(World&, const Entity& e) override { entities.push_back(e.id); }
    void visit(EntityId id, BasicTransform&) override { components.emplace_back(id, ComponentKind::BasicTransform); }
    void visit(EntityId id, GATransform&) override { components.emplace_back(id, ComponentKind::GATransform); }
    void visit(EntityId id, Camera&) override { components.emplace_back(id, ComponentKind::Camera); }
    void visit(EntityId id, RenderMesh&) override { components.emplace_back(id, ComponentKind::RenderMesh); }
    void visit(EntityId id, VertexArray&) override { components.emplace_back(id, ComponentKind::VertexArray); }
    void visit(EntityId id, ShaderParams&) override { components.emplace_back(id, ComponentKind::ShaderParams); }
};

/// Random tree built through the public API; returns ids in creation order.
std::vector<EntityId> random_tree(World& w, oracle::Rng& rng, int count) {
    std::vector<EntityId> ids{w.create_entity("root")};
    for (int i = 1; i < count; ++i) {
        const EntityId e = w.create_entity("e" + std::to_string(i));
        w.add_entity_child(ids[static_cast<std::size_t>(rng.integer(0, i - 1))], e);
        ids.push_back(e);
    }
    return ids;
}

} // namespace

TEST(Ecss, CreateEntityIds) {
    World w;
    const EntityId a = w.create_entity("a");
    EXPECT_EQ(a.value, 1u);
    EXPECT_EQ(w.root(), a);
    const EntityId b = w.create_entity("b");
    EXPECT_GT(b, a);
    w.add_entity_child(a, b);
    w.remove_entity(b);
    const EntityId c = w.create_entity("c");
    EXPECT_NE(c, a);
    EXPECT_NE(c, b);
    EXPECT_FALSE(w.is_alive(b));
    EXPECT_TRUE(w.is_alive(c));
}

TEST(Ecss, ChildrenAndCycles) {
    World w;
    const EntityId root = w.create_entity("root");
    const EntityId e1 = w.create_entity("E1"), e2 = w.create_entity("E2");
    w.add_entity_child(e1, e2);
    w.add_entity_child(root, e1);
    EXPECT_EQ(w.preorder(), (std::vector<EntityId>{root, e1, e2}));
    EXPECT_EQ(code_of([&] { w.add_entity_child(e2, e1, Reparent::Allow); }), ErrorCode::CycleError);
    EXPECT_EQ(code_of([&] { w.add_entity_child(e1, e1, Reparent::Allow); }), ErrorCode::CycleError);
    EXPECT_EQ(code_of([&] { w.add_entity_child(e2, root, Reparent::Allow); }), ErrorCode::RootReparent);
    EXPECT_EQ(code_of([&] { w.add_entity_child(root, e2); }), ErrorCode::AlreadyParented);
    EXPECT_EQ(code_of([&] { w.add_entity_child(root, EntityId{99}); }), ErrorCode::UnknownEntity);

    World w2;
    const EntityId r = w2.create_entity("root");
    const EntityId a = w2.create_entity("a"), b = w2.create_entity("b"), c = w2.create_entity("c");
    for (EntityId e : {a, b, c}) w2.add_entity_child(r, e);
    EXPECT_EQ(w2.entity(r).children, (std::vector<EntityId>{a, b, c}));
}

TEST(Ecss, ReparentMovesSubtree) {
    World w;
    const EntityId root = w.create_entity("root");
    const EntityId a = w.create_entity("a"), b = w.create_entity("b");
    w.add_entity_child(root, a);
    w.add_entity_child(root, b);
    w.add_entity_child(a, b, Reparent::Allow);
    EXPECT_EQ(w.entity(b).parent, a);
    EXPECT_EQ(w.entity(root).children, (std::vector<EntityId>{a}));
}

TEST(Ecss, ComponentsAddGet) {
    World w;
    const EntityId root = w.create_entity("root");
    const EntityId e = w.create_entity("cam");
    w.add_entity_child(root, e);
    w.add_component(e, BasicTransform{mat_translate({1, 2, 3})});
    w.add_component(e, Camera{ortho(-1, 1, -1, 1, 0.1, 10)});
    ASSERT_NE(w.get_component<BasicTransform>(e), nullptr);
    EXPECT_EQ(w.get_component<BasicTransform>(e)->trs, mat_translate({1, 2, 3}));
    ASSERT_NE(w.get_component<Camera>(e), nullptr);
    EXPECT_EQ(w.get_component<RenderMesh>(e), nullptr);
    EXPECT_EQ(code_of([&] { w.add_component(e, BasicTransform{}); }), ErrorCode::DuplicateComponent);
    EXPECT_EQ(code_of([&] { w.add_component(e, make_ga_transform({}, {0, 0, 1}, 0, 1)); }),
              ErrorCode::DuplicateComponent);
    EXPECT_EQ(code_of([&] { w.add_component(e, Camera{}); }), ErrorCode::DuplicateComponent);

    const EntityId m = w.create_entity("mesh");
    w.add_entity_child(root, m);
    const ComponentKey k1 = w.add_component(m, RenderMesh{});
    const ComponentKey k2 = w.add_component(m, VertexArray{});
    const ComponentKey k3 = w.add_component(m, ShaderParams{});
    EXPECT_NE(k1, k2);
    EXPECT_NE(k2, k3);
    EXPECT_NE(k1, k3);
    // A second mesh on the same entity is allowed and gets its own slot.
    const ComponentKey k4 = w.add_component(m, RenderMesh{});
    EXPECT_EQ(k4.slot, 1u);
    EXPECT_EQ(w.get_components<RenderMesh>(m).size(), 2u);

    w.remove_entity(m);
    EXPECT_EQ(code_of([&] { w.get_component<RenderMesh>(m); }), ErrorCode::UnknownEntity);
}

TEST(Ecss, TraversalOrder) {
    World w;
    const EntityId root = w.create_entity("root");
    const EntityId a = w.create_entity("a"), b = w.create_entity("b"), c = w.create_entity("c");
    w.add_entity_child(root, a);
    w.add_entity_child(root, b);
    w.add_entity_child(a, c);
    w.add_component(c, BasicTransform{});
    w.add_component(c, RenderMesh{});
    OrderVisitor v;
    w.traverse_dfs(v);
    EXPECT_EQ(v.entities, (std::vector<EntityId>{root, a, c, b}));
    ASSERT_EQ(v.components.size(), 2u);
    EXPECT_EQ(v.components[0].second, ComponentKind::BasicTransform);
    EXPECT_EQ(v.components[1].second, ComponentKind::RenderMesh);
}

TEST(Ecss, RandomTreeProperties) {
    oracle::Rng rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        World w;
        const int n = rng.integer(1, 60);
        const auto ids = random_tree(w, rng, n);
        // Random reparenting; edges that would close a cycle are rejected.
        for (int k = 0; k < 20; ++k) {
            const EntityId p = ids[static_cast<std::size_t>(rng.integer(0, n - 1))];
            const EntityId c = ids[static_cast<std::size_t>(rng.integer(0, n - 1))];
            try {
                w.add_entity_child(p, c, Reparent::Allow);
            } catch (const Error&) {
            }
        }
        OrderVisitor v1, v2;
        w.traverse_dfs(v1);
        w.traverse_dfs(v2);
        EXPECT_EQ(v1.entities, v2.entities);
        EXPECT_EQ(static_cast<int>(v1.entities.size()), n);

        std::set<EntityId> seen;
        for (EntityId e : v1.entities) {
            const Entity& ent = w.entity(e);
            if (ent.parent) {
                EXPECT_TRUE(seen.count(ent.parent)) << "parent visited first";
                const auto& siblings = w.entity(ent.parent).children;
                EXPECT_NE(std::find(siblings.begin(), siblings.end(), e), siblings.end());
            } else {
                EXPECT_EQ(e, w.root());
            }
            for (EntityId child : ent.children) EXPECT_EQ(w.entity(child).parent, e);
            seen.insert(e);
        }
        // Acyclic: walking up from any entity reaches the root within n steps.
        for (EntityId e : ids) {
            EntityId cur = e;
            int steps = 0;
            while (w.entity(cur).parent && steps <= n) {
                cur = w.entity(cur).parent;
                ++steps;
            }
            EXPECT_EQ(cur, w.root());
        }
    }
}

TEST(Ecss, RemovalClosesComponentOwnership) {
    oracle::Rng rng(32);
    World w;
    const auto ids = random_tree(w, rng, 40);
    for (EntityId e : ids) w.add_component(e, RenderMesh{});
    w.remove_entity(ids[5]);
    w.remove_entity(ids[17]);
    std::size_t live_meshes = 0;
    w.store<RenderMesh>().for_each([&](EntityId owner, RenderMesh&) {
        EXPECT_TRUE(w.is_alive(owner));
        ++live_meshes;
    });
    EXPECT_EQ(live_meshes, w.entity_count());
    EXPECT_EQ(code_of([&] { w.remove_entity(w.root()); }), ErrorCode::InvalidArgument);
}

TEST(Ecss, EventBus) {
    World w;
    std::vector<std::string> order;
    int got = 0;
    w.subscribe("tick", [&](const Event& e) {
        order.push_back("A");
        got = std::any_cast<int>(e.payload);
    });
    w.subscribe("tick", [&](const Event&) { order.push_back("B"); });
    w.publish({"tick", 42});
    EXPECT_EQ(got, 42);
    EXPECT_EQ(order, (std::vector<std::string>{"A", "B"}));
    EXPECT_NO_THROW(w.publish({"nobody", 1}));

    EventBus bus;
    int calls = 0;
    const SubscriptionId id = bus.subscribe("t", [&](const Event&) { ++calls; });
    bus.subscribe("t", [](const Event&) { throw std::runtime_error("boom"); });
    bus.subscribe("t", [&](const Event&) { ++calls; });
    EXPECT_EQ(code_of([&] { bus.publish({"t", {}}); }), ErrorCode::ListenerError);
    EXPECT_EQ(calls, 2) << "later listeners still run";
    EXPECT_TRUE(bus.unsubscribe(id));
    EXPECT_FALSE(bus.unsubscribe(id));
    EXPECT_EQ(bus.subscriber_count("t"), 2u);
}

TEST(Ecss, WorldPublishesLifecycleEvents) {
    World w;
    std::vector<std::string> topics;
    for (const char* t : {topics::entity_created, topics::entity_attached, topics::component_added})
        w.subscribe(t, [&](const Event& e) { topics.push_back(e.topic); });
    const EntityId r = w.create_entity("root");
    const EntityId e = w.create_entity("e");
    w.add_entity_child(r, e);
    w.add_component(e, BasicTransform{});
    EXPECT_EQ(topics, (std::vector<std::string>{topics::entity_created, topics::entity_created,
                                                topics::entity_attached, topics::component_added}));
}
