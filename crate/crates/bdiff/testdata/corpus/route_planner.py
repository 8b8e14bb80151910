"""Shortest-path planning over a weighted road grid."""

import heapq
from typing import Iterable, NamedTuple


class Road(NamedTuple):
    origin: str
    target: str
    minutes: float
    toll: bool


class RoadNetwork:
    def __init__(self) -> None:
        self.adjacency: dict[str, list[Road]] = {}
        self.coordinates: dict[str, tuple[float, float]] = {}

    def add_junction(self, name: str, x: float, y: float) -> None:
        self.coordinates[name] = (x, y)
        self.adjacency.setdefault(name, [])

    def add_road(self, origin: str, target: str, minutes: float, toll: bool = False) -> None:
        if origin not in self.coordinates or target not in self.coordinates:
            raise KeyError("both endpoints must be registered junctions")
        if minutes <= 0:
            raise ValueError("travel time must be positive")
        self.adjacency[origin].append(Road(origin, target, minutes, toll))
        self.adjacency[target].append(Road(target, origin, minutes, toll))

    def neighbors(self, junction: str) -> Iterable[Road]:
        return tuple(self.adjacency.get(junction, ()))


class PlanningError(Exception):
    pass


def estimate_minutes(network: RoadNetwork, a: str, b: str) -> float:
    ax, ay = network.coordinates[a]
    bx, by = network.coordinates[b]
    crow_flies = ((ax - bx) ** 2 + (ay - by) ** 2) ** 0.5
    return crow_flies / 1.2


def plan_route(network: RoadNetwork, start: str, goal: str, avoid_tolls: bool = False):
    if start not in network.coordinates:
        raise PlanningError(f"unknown start junction: {start}")
    if goal not in network.coordinates:
        raise PlanningError(f"unknown goal junction: {goal}")
    frontier: list[tuple[float, float, str]] = []
    heapq.heappush(frontier, (estimate_minutes(network, start, goal), 0.0, start))
    best_cost = {start: 0.0}
    came_from: dict[str, str] = {}
    visited: set[str] = set()
    while frontier:
        _, cost_so_far, here = heapq.heappop(frontier)
        if here == goal:
            return _reconstruct(came_from, start, goal), cost_so_far
        if here in visited:
            continue
        visited.add(here)
        for road in network.neighbors(here):
            if avoid_tolls and road.toll:
                continue
            candidate = cost_so_far + road.minutes
            if candidate < best_cost.get(road.target, float("inf")):
                best_cost[road.target] = candidate
                came_from[road.target] = here
                guess = candidate + estimate_minutes(network, road.target, goal)
                heapq.heappush(frontier, (guess, candidate, road.target))
    raise PlanningError(f"no route from {start} to {goal}")


def _reconstruct(came_from: dict[str, str], start: str, goal: str) -> list[str]:
    path = [goal]
    while path[-1] != start:
        path.append(came_from[path[-1]])
    path.reverse()
    return path


def demo_network() -> RoadNetwork:
    network = RoadNetwork()
    network.add_junction("harbor", 0.0, 0.0)
    network.add_junction("old town", 2.5, 1.0)
    network.add_junction("市 center", 4.0, 2.0)
    network.add_junction("university", 5.5, 4.5)
    network.add_junction("airport", 9.0, 1.5)
    network.add_road("harbor", "old town", 7.5)
    network.add_road("old town", "市 center", 5.0)
    network.add_road("市 center", "university", 6.5)
    network.add_road("市 center", "airport", 11.0, toll=True)
    network.add_road("university", "airport", 9.0)
    return network
