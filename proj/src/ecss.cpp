#include "elements/ecss.hpp"

#include <algorithm>

namespace elements {

SubscriptionId EventBus::subscribe(const std::string& topic, Listener listener) {
    const SubscriptionId id{next_id_++};
    topics_[topic].push_back({id, std::move(listener)});
    return id;
}

bool EventBus::unsubscribe(SubscriptionId id) {
    for (auto& [topic, subs] : topics_) {
        const auto it = std::find_if(subs.begin(), subs.end(), [&](const Subscription& s) { return s.id == id; });
        if (it != subs.end()) {
            subs.erase(it);
            return true;
        }
    }
    return false;
}

void EventBus::publish(const Event& event) {
    const auto it = topics_.find(event.topic);
    if (it == topics_.end()) return;
    // Snapshot so listeners may (un)subscribe while being notified.
    const std::vector<Subscription> subs = it->second;
    std::string failures;
    std::size_t failed = 0;
    for (const Subscription& s : subs) {
        try {
            s.listener(event);
        } catch (const std::exception& e) {
            ++failed;
            failures += failures.empty() ? "" : "; ";
            failures += e.what();
        }
    }
    if (failed != 0)
        throw Error(ErrorCode::ListenerError,
                    std::to_string(failed) + " listener(s) failed on '" + event.topic + "': " + failures);
}

std::size_t EventBus::subscriber_count(const std::string& topic) const {
    const auto it = topics_.find(topic);
    return it == topics_.end() ? 0 : it->second.size();
}

World::EntityRecord& World::record(EntityId id) {
    if (id.value == 0 || id.value >= entities_.size() || !entities_[id.value].alive)
        throw Error(ErrorCode::UnknownEntity, "entity " + std::to_string(id.value) + " is not alive");
    return entities_[id.value];
}

const World::EntityRecord& World::record(EntityId id) const { return const_cast<World*>(this)->record(id); }

bool World::is_alive(EntityId id) const {
    return id.value != 0 && id.value < entities_.size() && entities_[id.value].alive;
}

const Entity& World::entity(EntityId id) const { return record(id).entity; }

EntityId World::create_entity(std::string name) {
    const EntityId id{static_cast<std::uint32_t>(entities_.size())};
    EntityRecord rec;
    rec.entity.id = id;
    rec.entity.name = std::move(name);
    rec.alive = true;
    entities_.push_back(std::move(rec));
    ++live_count_;
    if (!root_) root_ = id;
    events_.publish({topics::entity_created, id});
    return id;
}

void World::add_entity_child(EntityId parent, EntityId child, Reparent policy) {
    record(parent);
    EntityRecord& child_rec = record(child);
    if (child == root_) throw Error(ErrorCode::RootReparent, "the root entity cannot become a child");
    for (EntityId a = parent; a; a = entities_[a.value].entity.parent) {
        if (a == child)
            throw Error(ErrorCode::CycleError, "entity " + std::to_string(child.value) + " is an ancestor of " +
                                                   std::to_string(parent.value));
    }
    const EntityId old_parent = child_rec.entity.parent;
    if (old_parent) {
        if (policy == Reparent::Forbid)
            throw Error(ErrorCode::AlreadyParented,
                        "entity " + std::to_string(child.value) + " already has parent " +
                            std::to_string(old_parent.value));
        auto& siblings = entities_[old_parent.value].entity.children;
        siblings.erase(std::find(siblings.begin(), siblings.end(), child));
    }
    child_rec.entity.parent = parent;
    entities_[parent.value].entity.children.push_back(child);
    events_.publish({topics::entity_attached, child});
}

void World::remove_entity(EntityId id) {
    EntityRecord& rec = record(id);
    if (id == root_) throw Error(ErrorCode::InvalidArgument, "the root entity cannot be removed");
    if (rec.entity.parent) {
        auto& siblings = entities_[rec.entity.parent.value].entity.children;
        siblings.erase(std::find(siblings.begin(), siblings.end(), id));
    }
    std::vector<EntityId> pending{id};
    while (!pending.empty()) {
        const EntityId e = pending.back();
        pending.pop_back();
        EntityRecord& r = entities_[e.value];
        for (EntityId c : r.entity.children) pending.push_back(c);
        for (const Attachment& a : r.attachments) {
            std::apply(
                [&](auto&... column) {
                    ((component_traits<typename std::decay_t<decltype(column)>::value_type>::kind == a.kind
                          ? void(column.owners[a.store_index] = kNoEntity)
                          : void()),
                     ...);
                },
                stores_);
        }
        r.attachments.clear();
        r.entity.children.clear();
        r.alive = false;
        --live_count_;
        events_.publish({topics::entity_removed, e});
    }
}

ComponentKey World::add_component(EntityId owner, Component component) {
    return std::visit([&](auto&& c) { return add_component(owner, std::move(c)); }, std::move(component));
}

void World::check_unique(EntityId owner, ComponentKind kind) const {
    const bool is_transform = kind == ComponentKind::BasicTransform || kind == ComponentKind::GATransform;
    for (const Attachment& a : record(owner).attachments) {
        const bool clash = (is_transform && (a.kind == ComponentKind::BasicTransform ||
                                             a.kind == ComponentKind::GATransform)) ||
                           (kind == ComponentKind::Camera && a.kind == ComponentKind::Camera);
        if (clash)
            throw Error(ErrorCode::DuplicateComponent, "entity " + std::to_string(owner.value) + " already has a " +
                                                           std::string(to_string(a.kind)));
    }
}

std::vector<ComponentKey> World::components_of(EntityId owner) const {
    std::vector<ComponentKey> keys;
    std::array<std::uint32_t, kComponentKindCount> seen{};
    for (const Attachment& a : record(owner).attachments)
        keys.push_back({owner, a.kind, seen[static_cast<std::size_t>(a.kind)]++});
    return keys;
}

bool World::has_component(EntityId owner, ComponentKind kind) const {
    const auto& attachments = record(owner).attachments;
    return std::any_of(attachments.begin(), attachments.end(), [&](const Attachment& a) { return a.kind == kind; });
}

void World::dispatch(Visitor& visitor, EntityId owner, Attachment a) {
    switch (a.kind) {
    case ComponentKind::BasicTransform: visitor.visit(owner, at<BasicTransform>(a.store_index)); break;
    case ComponentKind::GATransform: visitor.visit(owner, at<GATransform>(a.store_index)); break;
    case ComponentKind::Camera: visitor.visit(owner, at<Camera>(a.store_index)); break;
    case ComponentKind::RenderMesh: visitor.visit(owner, at<RenderMesh>(a.store_index)); break;
    case ComponentKind::SkinnedMesh: visitor.visit(owner, at<SkinnedMesh>(a.store_index)); break;
    case ComponentKind::VertexArray: visitor.visit(owner, at<VertexArray>(a.store_index)); break;
    case ComponentKind::ShaderParams: visitor.visit(owner, at<ShaderParams>(a.store_index)); break;
    case ComponentKind::PointLight: visitor.visit(owner, at<PointLight>(a.store_index)); break;
    }
}

void World::traverse_dfs(Visitor& visitor) {
    if (!root_) return;
    std::vector<EntityId> stack{root_};
    while (!stack.empty()) {
        const EntityId id = stack.back();
        stack.pop_back();
        visitor.visit_entity(*this, entities_[id.value].entity);
        // Index-based: a visitor may create entities or components and reallocate.
        for (std::size_t i = 0; i < entities_[id.value].attachments.size(); ++i)
            dispatch(visitor, id, entities_[id.value].attachments[i]);
        const auto& children = entities_[id.value].entity.children;
        for (auto it = children.rbegin(); it != children.rend(); ++it) stack.push_back(*it);
    }
}

std::vector<EntityId> World::preorder() const {
    std::vector<EntityId> order;
    if (!root_) return order;
    std::vector<EntityId> stack{root_};
    while (!stack.empty()) {
        const EntityId id = stack.back();
        stack.pop_back();
        order.push_back(id);
        const auto& children = entities_[id.value].entity.children;
        for (auto it = children.rbegin(); it != children.rend(); ++it) stack.push_back(*it);
    }
    return order;
}

} // namespace elements
