#pragma once

// Entity-Component-System in a scenegraph.
//
// Entities are bare grouping nodes (id, name, parent, ordered children).
// Components are plain data held in one column per kind. Systems are
// visitors driven by a deterministic pre-order traversal. Notifications go
// through a synchronous topic-based event bus.

#include <any>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "elements/components.hpp"
#include "elements/error.hpp"

namespace elements {

/// Unique within one World and never reused; 0 means "no entity".
struct EntityId {
    std::uint32_t value = 0;

    constexpr explicit operator bool() const { return value != 0; }
    constexpr auto operator<=>(const EntityId&) const = default;
};

inline constexpr EntityId kNoEntity{};

struct Entity {
    EntityId id;
    std::string name;
    EntityId parent;
    std::vector<EntityId> children;
};

struct ComponentKey {
    EntityId owner;
    ComponentKind kind{};
    std::uint32_t slot = 0; // index among the owner's components of this kind

    constexpr bool operator==(const ComponentKey&) const = default;
};

/// Column of one component kind. Slots of removed entities keep an owner of 0.
template <ComponentType T>
struct ComponentStore {
    using value_type = T;

    std::vector<EntityId> owners;
    std::vector<T> data;

    template <typename F>
    void for_each(F&& f) {
        for (std::size_t i = 0; i < data.size(); ++i)
            if (owners[i]) f(owners[i], data[i]);
    }
    template <typename F>
    void for_each(F&& f) const {
        for (std::size_t i = 0; i < data.size(); ++i)
            if (owners[i]) f(owners[i], data[i]);
    }
};

struct Event {
    std::string topic;
    std::any payload;
};

using Listener = std::function<void(const Event&)>;

struct SubscriptionId {
    std::uint64_t value = 0;
    constexpr auto operator<=>(const SubscriptionId&) const = default;
};

/// Topics published by the World itself. Payload is the EntityId (or ComponentKey for components).
namespace topics {
inline constexpr const char* entity_created = "entity.created";
inline constexpr const char* entity_attached = "entity.attached";
inline constexpr const char* entity_removed = "entity.removed";
inline constexpr const char* component_added = "component.added";
} // namespace topics

class EventBus {
public:
    SubscriptionId subscribe(const std::string& topic, Listener listener);
    bool unsubscribe(SubscriptionId id);
    /// Delivers to every subscriber in subscription order. Listener failures
    /// are collected and rethrown as one ListenerError after delivery.
    void publish(const Event& event);
    std::size_t subscriber_count(const std::string& topic) const;

private:
    struct Subscription {
        SubscriptionId id;
        Listener listener;
    };
    std::map<std::string, std::vector<Subscription>, std::less<>> topics_;
    std::uint64_t next_id_ = 1;
};

class World;

/// Per-kind callbacks invoked by World::traverse_dfs. Override what you need.
class Visitor {
public:
    virtual ~Visitor() = default;

    virtual void visit_entity(World&, const Entity&) {}
    virtual void visit(EntityId, BasicTransform&) {}
    virtual void visit(EntityId, GATransform&) {}
    virtual void visit(EntityId, Camera&) {}
    virtual void visit(EntityId, RenderMesh&) {}
    virtual void visit(EntityId, SkinnedMesh&) {}
    virtual void visit(EntityId, VertexArray&) {}
    virtual void visit(EntityId, ShaderParams&) {}
    virtual void visit(EntityId, PointLight&) {}
};

enum class Reparent { Forbid, Allow };

class World {
public:
    World() = default;

    /// The first entity created becomes the scenegraph root.
    EntityId create_entity(std::string name);

    /// Appends `child` to `parent`'s children. Throws CycleError, UnknownEntity,
    /// AlreadyParented (unless reparenting is allowed) or RootReparent.
    void add_entity_child(EntityId parent, EntityId child, Reparent policy = Reparent::Forbid);

    /// Tombstones the entity and its subtree; their components are dropped and IDs retired.
    void remove_entity(EntityId id);

    bool is_alive(EntityId id) const;
    EntityId root() const { return root_; }
    const Entity& entity(EntityId id) const;
    std::size_t entity_count() const { return live_count_; }
    /// Highest ID issued so far.
    std::uint32_t max_entity_id() const { return static_cast<std::uint32_t>(entities_.size()) - 1; }

    template <ComponentType T>
    ComponentKey add_component(EntityId owner, T component);
    ComponentKey add_component(EntityId owner, Component component);

    /// First component of kind T on `owner`, or nullptr. Throws UnknownEntity.
    template <ComponentType T>
    T* get_component(EntityId owner);
    template <ComponentType T>
    const T* get_component(EntityId owner) const;
    template <ComponentType T>
    std::vector<T*> get_components(EntityId owner);

    template <ComponentType T>
    T& component(const ComponentKey& key);

    /// Components of `owner` in attachment order.
    std::vector<ComponentKey> components_of(EntityId owner) const;
    bool has_component(EntityId owner, ComponentKind kind) const;

    template <ComponentType T>
    ComponentStore<T>& store() { return std::get<ComponentStore<T>>(stores_); }
    template <ComponentType T>
    const ComponentStore<T>& store() const { return std::get<ComponentStore<T>>(stores_); }

    /// Pre-order from the root: entity callback, its components in attachment
    /// order, then children in insertion order. Visitor exceptions abort the walk.
    void traverse_dfs(Visitor& visitor);
    /// Entity IDs in the same order traverse_dfs visits them.
    std::vector<EntityId> preorder() const;

    EventBus& events() { return events_; }
    SubscriptionId subscribe(const std::string& topic, Listener listener) {
        return events_.subscribe(topic, std::move(listener));
    }
    void publish(const Event& event) { events_.publish(event); }

private:
    struct Attachment {
        ComponentKind kind;
        std::uint32_t store_index;
    };
    struct EntityRecord {
        Entity entity;
        std::vector<Attachment> attachments;
        bool alive = false;
    };

    EntityRecord& record(EntityId id);
    const EntityRecord& record(EntityId id) const;
    void check_unique(EntityId owner, ComponentKind kind) const;
    void dispatch(Visitor& visitor, EntityId owner, Attachment attachment);

    template <ComponentType T>
    T& at(std::uint32_t store_index) {
        return store<T>().data[store_index];
    }

    // Index 0 is a permanent placeholder so that IDs equal indices.
    std::vector<EntityRecord> entities_{EntityRecord{}};
    std::size_t live_count_ = 0;
    EntityId root_;
    std::tuple<ComponentStore<BasicTransform>, ComponentStore<GATransform>, ComponentStore<Camera>,
               ComponentStore<RenderMesh>, ComponentStore<SkinnedMesh>, ComponentStore<VertexArray>,
               ComponentStore<ShaderParams>, ComponentStore<PointLight>>
        stores_;
    EventBus events_;
};

template <ComponentType T>
ComponentKey World::add_component(EntityId owner, T component) {
    constexpr ComponentKind kind = component_traits<T>::kind;
    EntityRecord& rec = record(owner);
    check_unique(owner, kind);

    auto& column = store<T>();
    const auto index = static_cast<std::uint32_t>(column.data.size());
    column.owners.push_back(owner);
    column.data.push_back(std::move(component));

    std::uint32_t slot = 0;
    for (const Attachment& a : rec.attachments)
        if (a.kind == kind) ++slot;
    rec.attachments.push_back({kind, index});

    const ComponentKey key{owner, kind, slot};
    events_.publish({topics::component_added, key});
    return key;
}

template <ComponentType T>
T* World::get_component(EntityId owner) {
    const EntityRecord& rec = record(owner);
    for (const Attachment& a : rec.attachments)
        if (a.kind == component_traits<T>::kind) return &at<T>(a.store_index);
    return nullptr;
}

template <ComponentType T>
const T* World::get_component(EntityId owner) const {
    return const_cast<World*>(this)->get_component<T>(owner);
}

template <ComponentType T>
std::vector<T*> World::get_components(EntityId owner) {
    std::vector<T*> out;
    const EntityRecord& rec = record(owner);
    for (const Attachment& a : rec.attachments)
        if (a.kind == component_traits<T>::kind) out.push_back(&at<T>(a.store_index));
    return out;
}

template <ComponentType T>
T& World::component(const ComponentKey& key) {
    if (key.kind != component_traits<T>::kind)
        throw Error(ErrorCode::InvalidArgument, "component key kind does not match requested type");
    const EntityRecord& rec = record(key.owner);
    std::uint32_t slot = 0;
    for (const Attachment& a : rec.attachments) {
        if (a.kind != key.kind) continue;
        if (slot++ == key.slot) return at<T>(a.store_index);
    }
    throw Error(ErrorCode::InvalidArgument, "no component at the given key");
}

} // namespace elements

template <>
struct std::hash<elements::EntityId> {
    std::size_t operator()(const elements::EntityId& id) const noexcept { return std::hash<std::uint32_t>{}(id.value); }
};
