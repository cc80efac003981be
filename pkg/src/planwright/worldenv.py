"""Adapter exposing the text world as an executor environment."""
from __future__ import annotations

from .executor import Skill
from .ir import Expression
from .textworld import SkillResult, WorldState, apply_skill, check_goal, describe_state

DEFAULT_SKILLS: tuple[Skill, ...] = (
    Skill("walk_to", (("target", "string"),), "Walk next to the named entity."),
    Skill("open", (("target", "string"),), "Open a container you are next to."),
    Skill("close", (("target", "string"),), "Close a container you are next to."),
    Skill("grab", (("target", "string"),), "Pick up a reachable item with a free hand."),
    Skill("put_on", (("target", "string"), ("destination", "string")), "Place a held item onto a surface you are next to."),
    Skill("put_in", (("target", "string"), ("destination", "string")), "Put a held item into an open container you are next to."),
    Skill("heat", (("target", "string"),), "Heat an item that sits inside a heater you are next to."),
)


class TextWorldEnv:
    """Mutable handle over immutable world states.

    The only mutation path is `apply`, so every state change in a run maps
    to exactly one logged skill invocation.
    """

    def __init__(self, state: WorldState, goal: Expression, skills: tuple[Skill, ...] = DEFAULT_SKILLS):
        self.state = state
        self.goal = goal
        self._skills = skills

    def describe(self) -> str:
        return describe_state(self.state)

    def apply(self, skill: str, arguments: dict) -> SkillResult:
        args = tuple(str(v) for v in arguments.values() if v is not None)
        try:
            result, new_state = apply_skill(self.state, skill, args)
        except KeyError as exc:
            return SkillResult(False, f"There is no entity called {exc.args[0]!r} here.")
        self.state = new_state
        return result

    def goal_satisfied(self) -> bool:
        return check_goal(self.state, self.goal)

    def skills(self) -> tuple[Skill, ...]:
        return self._skills
