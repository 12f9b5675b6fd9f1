"""Decomposition aids: reflection prompts and sub-attribute suggestions.

Two provider flavors.  The static one matches keywords in the attribute
name against a bundled corpus and is fully deterministic, so tests and
offline use get stable output.  The remote one posts the decision
context to a completion endpoint and is allowed to fail; callers must
treat a provider error as different from "no ideas" (an empty list).
"""

from __future__ import annotations

import json
import os
import urllib.error
import urllib.request
from importlib import resources

from .errors import NotFoundError, ProviderError, ValidationError
from .model import DecisionDocument
from .ops import add_child

PRIMITIVE_PROMPT = "Describe how you would judge/measure this attribute for each alternative."

GENERIC_SUGGESTIONS = ["cost", "time required", "quality", "risk", "convenience"]

DEFAULT_TOKEN_ENV = "SUGGEST_API_TOKEN"


def _quote_list(names: list[str]) -> str:
    quoted = [f"'{name}'" for name in names]
    if len(quoted) == 1:
        return quoted[0]
    return ", ".join(quoted[:-1]) + " and " + quoted[-1]


def reflection_prompt(document: DecisionDocument, node_id: int) -> str:
    """The nudge shown when someone opens an attribute's note.

    Non-primitive attributes ask how the children combine; primitive
    ones ask how the attribute would be judged.  Names are folded to
    lowercase so the question reads as a sentence.
    """
    tree = document.tree
    node = tree.node(node_id)
    kids = tree.children_of(node_id)
    if not kids:
        return PRIMITIVE_PROMPT
    child_names = [tree.nodes[c].name.lower() for c in kids]
    return (
        f"How do you intend to combine {_quote_list(child_names)} "
        f"into your judgment of '{node.name.lower()}'?"
    )


class StaticCorpusProvider:
    """Keyword-matched suggestions from a plain-text corpus.

    Corpus lines look like ``keyword | candidate | candidate | ...``;
    blank lines and ``#`` comments are skipped.  Every keyword found in
    the attribute name contributes its candidates, in file order.
    """

    def __init__(self, corpus_path: str | None = None):
        if corpus_path is None:
            text = (resources.files("decisiongrid") / "data" / "suggest_corpus.txt").read_text(
                encoding="utf-8"
            )
        else:
            with open(corpus_path, encoding="utf-8") as fh:
                text = fh.read()
        self.entries: list[tuple[str, list[str]]] = []
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            fields = [f.strip() for f in line.split("|")]
            if len(fields) < 2 or not all(fields):
                raise ValidationError(f"malformed corpus line: {line!r}")
            self.entries.append((fields[0].lower(), fields[1:]))

    def suggest(self, document: DecisionDocument, node_id: int, k: int) -> list[str]:
        name = document.tree.node(node_id).name.lower()
        candidates: list[str] = []
        for keyword, items in self.entries:
            if keyword in name:
                candidates.extend(items)
        if not candidates:
            candidates = list(GENERIC_SUGGESTIONS)
        return _filter_candidates(document, node_id, candidates, k)


class RemoteCompletionProvider:
    """Suggestions from a completion service over HTTP.

    Sends goal, scoring goal, a plain-text outline of the tree, and the
    path of the attribute being decomposed; expects back JSON with a
    ``candidates`` list.  Any transport or shape problem raises
    ProviderError rather than masquerading as an empty answer.
    """

    def __init__(self, endpoint: str, timeout: float = 10.0, token_env: str = DEFAULT_TOKEN_ENV):
        if not endpoint:
            raise ValidationError("remote provider needs an endpoint URL")
        self.endpoint = endpoint
        self.timeout = timeout
        self.token_env = token_env

    def suggest(self, document: DecisionDocument, node_id: int, k: int) -> list[str]:
        tree = document.tree
        tree.node(node_id)
        payload = {
            "goal": document.goal,
            "scoring_goal": document.scoring_goal,
            "tree": tree_outline(document),
            "focus": "/".join(tree.path_names(node_id)),
            "count": k,
        }
        request = urllib.request.Request(
            self.endpoint,
            data=json.dumps(payload).encode("utf-8"),
            headers={"Content-Type": "application/json"},
            method="POST",
        )
        token = os.environ.get(self.token_env)
        if token:
            request.add_header("Authorization", f"Bearer {token}")
        try:
            with urllib.request.urlopen(request, timeout=self.timeout) as response:
                if response.status != 200:
                    raise ProviderError(f"suggestion endpoint returned {response.status}")
                body = response.read()
        except ProviderError:
            raise
        except (urllib.error.URLError, OSError, ValueError) as exc:
            raise ProviderError(f"suggestion endpoint unreachable: {exc}") from exc
        try:
            data = json.loads(body.decode("utf-8"))
            candidates = data["candidates"]
        except (UnicodeDecodeError, json.JSONDecodeError, KeyError, TypeError) as exc:
            raise ProviderError(f"malformed suggestion response: {exc}") from exc
        if not isinstance(candidates, list) or not all(isinstance(c, str) for c in candidates):
            raise ProviderError("malformed suggestion response: candidates must be strings")
        cleaned = [c.strip() for c in candidates if c.strip()]
        return _filter_candidates(document, node_id, cleaned, k)


def _filter_candidates(
    document: DecisionDocument, node_id: int, candidates: list[str], k: int
) -> list[str]:
    """Dedupe and drop anything that would collide with an existing child."""
    taken = {
        document.tree.nodes[c].name.lower()
        for c in document.tree.children_of(node_id)
    }
    out: list[str] = []
    for candidate in candidates:
        key = candidate.lower()
        if key in taken:
            continue
        taken.add(key)
        out.append(candidate)
        if len(out) == k:
            break
    return out


def tree_outline(document: DecisionDocument) -> str:
    """Indented plain-text rendering of the value tree."""
    tree = document.tree
    lines: list[str] = []

    def walk(nid: int, depth: int) -> None:
        node = tree.nodes[nid]
        marker = "" if nid == tree.root_id else f" (x{node.importance})"
        lines.append("  " * depth + "- " + node.name + marker)
        for child in tree.children_of(nid):
            walk(child, depth + 1)

    walk(tree.root_id, 0)
    return "\n".join(lines)


def suggest_subattributes(
    document: DecisionDocument,
    node_id: int,
    k: int = 5,
    provider=None,
) -> list[str]:
    """Candidate child names for decomposing an attribute, at most k."""
    if not isinstance(k, int) or k < 1:
        raise ValidationError(f"k must be a positive integer, got {k!r}")
    document.tree.node(node_id)
    if provider is None:
        provider = StaticCorpusProvider()
    return provider.suggest(document, node_id, k)


def accept_suggestion(document: DecisionDocument, node_id: int, name: str) -> int:
    """Adopt one suggestion as a new child of the attribute."""
    return add_child(document, node_id, name)
