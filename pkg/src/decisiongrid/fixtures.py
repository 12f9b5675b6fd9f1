"""Ready-made decisions used by demos and tests."""

from __future__ import annotations

from .model import DecisionDocument, new_decision
from .ops import add_child

REMOTE_WORKDAY_GOAL = "which day of the week should be remote workday for my team"
REMOTE_WORKDAY_SCORING_GOAL = "Scoring potential remote workdays for team members"
WEEKDAYS = ["Monday", "Tuesday", "Wednesday", "Thursday", "Friday"]
REMOTE_WORKDAY_ATTRIBUTES = [
    "Business needs on specific days",
    "Employee preferences",
    "Collaboration and communication needs",
    "Workload distribution",
    "Productivity impact",
]

QUIET_HOURS_GOAL = "when should we hold our shared quiet hours"
QUIET_HOURS_SCORING_GOAL = "Scoring quiet hour slots for the team"
QUIET_HOURS_SLOTS = ["9-11 am", "10-12 am", "11am-1pm", "1-3pm", "2-4pm", "3-5pm"]
QUIET_HOURS_MEMBERS = ["Member A", "Member B", "Member C", "Member D"]


def remote_workday_decision(doc_id: str | None = None) -> DecisionDocument:
    """The remote-workday decision: five weekdays, five starting attributes."""
    return new_decision(
        goal=REMOTE_WORKDAY_GOAL,
        alternatives=list(WEEKDAYS),
        attributes=list(REMOTE_WORKDAY_ATTRIBUTES),
        scoring_goal=REMOTE_WORKDAY_SCORING_GOAL,
        doc_id=doc_id,
    )


def remote_workday_decomposed(doc_id: str | None = None) -> DecisionDocument:
    """Same decision with productivity impact split one level down."""
    document = remote_workday_decision(doc_id=doc_id)
    productivity = document.tree.resolve_path("root/Productivity impact")
    add_child(document, productivity, "disruption to weekly rhythm")
    add_child(document, productivity, "team collaboration")
    return document


def quiet_hours_decision(doc_id: str | None = None) -> DecisionDocument:
    """Quiet-hours slot choice, one preference column per team member.

    Members tally X marks under their own column, heat-map style, so
    the table doubles as a lightweight poll.
    """
    document = new_decision(
        goal=QUIET_HOURS_GOAL,
        alternatives=list(QUIET_HOURS_SLOTS),
        attributes=["Team preference"],
        scoring_goal=QUIET_HOURS_SCORING_GOAL,
        doc_id=doc_id,
    )
    preference = document.tree.resolve_path("root/Team preference")
    for member in QUIET_HOURS_MEMBERS:
        add_child(document, preference, member)
    return document
