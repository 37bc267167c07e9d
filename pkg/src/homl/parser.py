"""Lexer and recursive-descent parser for `.homl` files.

The surface syntax::

    scenario "name" {
      system {
        control: low
        transparency: low
        extension sensitivity = high
      }
      role reviewer "Paralegal" {
        authority: supervisory
        interaction: validation
      }
      derivation {
        goal G1 "..." mitigates reviewer {
          subgoal G1.1 for reviewer "..."
          subgoal G1.2 for system "..."
        }
        obstacle O1 blocks G1.1 "..."
        requirement R1s system addresses O1 "..."
        requirement R1h human(reviewer) addresses O1 "..."
      }
    }

`#` starts a line comment.  Keywords are contextual: `system`, `role`,
etc. are ordinary lowercase identifiers recognized by position.
Failures raise :class:`~homl.model.ParseError` carrying one or more
located diagnostics; no partial model is ever returned.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .backbone import (
    AuthorityLevel,
    ControlFrequency,
    ExtensionFactor,
    InteractionMode,
    TransparencyLevel,
)
from .model import (
    SYSTEM_AGENT,
    DerivationBlock,
    Diagnostic,
    Goal,
    Obstacle,
    OversightModel,
    ParseError,
    Requirement,
    RoleDecl,
    SourceSpan,
    Subgoal,
    SystemDecl,
)

GID_RE = re.compile(r"G[0-9]+(\.[0-9]+)*\Z")
OID_RE = re.compile(r"O[0-9]+\Z")
RID_RE = re.compile(r"R[0-9]+[sh]\Z")
IDENT_RE = re.compile(r"[a-z][a-z0-9_]*\Z")

AUTHORITY_KEYWORDS = {
    "operational": AuthorityLevel.OPERATIONAL,
    "supervisory": AuthorityLevel.SUPERVISORY,
    "audit": AuthorityLevel.AUDIT,
}

# Interaction modes use shortened authoring keywords.
INTERACTION_KEYWORDS = {
    "control": InteractionMode.ACTIVE_CONTROL,
    "validation": InteractionMode.APPROVAL_VALIDATION,
    "monitoring": InteractionMode.MONITORING_AUDITING,
    "corrective": InteractionMode.CORRECTIVE_MAINTENANCE,
}

LEVEL_KEYWORDS = {"high": "high", "low": "low"}

_TOKEN_SPEC = [
    ("WS", r"[ \t\r]+"),
    ("NEWLINE", r"\n"),
    ("COMMENT", r"#[^\n]*"),
    ("STRING", r'"(?:\\.|[^"\\\n])*"'),
    ("GID", r"G[0-9]+(?:\.[0-9]+)*"),
    ("OID", r"O[0-9]+"),
    ("RID", r"R[0-9]+[sh]\b"),
    ("IDENT", r"[a-z][a-z0-9_]*"),
    ("LBRACE", r"\{"),
    ("RBRACE", r"\}"),
    ("LPAREN", r"\("),
    ("RPAREN", r"\)"),
    ("COLON", r":"),
    ("EQUALS", r"="),
    ("COMMA", r","),
]
_MASTER_RE = re.compile("|".join(f"(?P<{n}>{p})" for n, p in _TOKEN_SPEC))

_ESCAPES = {"n": "\n", "t": "\t", '"': '"', "\\": "\\"}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    span: SourceSpan


def _unescape(raw: str, span: SourceSpan) -> str:
    body = raw[1:-1]
    out = []
    i = 0
    while i < len(body):
        ch = body[i]
        if ch == "\\":
            esc = body[i + 1]
            if esc not in _ESCAPES:
                raise ParseError([
                    Diagnostic("LEX-ESCAPE", f"unknown escape '\\{esc}'", span)
                ])
            out.append(_ESCAPES[esc])
            i += 2
        else:
            out.append(ch)
            i += 1
    return "".join(out)


def tokenize(source_text: str) -> list[Token]:
    tokens: list[Token] = []
    line, col = 1, 1
    pos = 0
    while pos < len(source_text):
        match = _MASTER_RE.match(source_text, pos)
        if match is None:
            raise ParseError([
                Diagnostic(
                    "LEX-BAD-TOKEN",
                    f"unexpected character {source_text[pos]!r}",
                    SourceSpan.point(line, col),
                )
            ])
        kind = match.lastgroup
        text = match.group()
        end_col = col + len(text)
        if kind == "NEWLINE":
            line += 1
            col = 1
        elif kind in ("WS", "COMMENT"):
            col = end_col
        else:
            tokens.append(
                Token(kind, text, SourceSpan(line, col, line, end_col - 1))
            )
            col = end_col
        pos = match.end()
    tokens.append(Token("EOF", "", SourceSpan.point(line, col)))
    return tokens


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0
        self.deferred: list[Diagnostic] = []

    @property
    def cur(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.cur
        if tok.kind != "EOF":
            self.pos += 1
        return tok

    def fail(self, message: str, span: SourceSpan | None = None):
        raise ParseError(
            self.deferred
            + [Diagnostic("SYN-ERROR", message, span or self.cur.span)]
        )

    def expect(self, kind: str, what: str) -> Token:
        if self.cur.kind != kind:
            got = self.cur.text or "end of input"
            self.fail(f"expected {what}, found {got!r}")
        return self.advance()

    def expect_keyword(self, word: str) -> Token:
        if self.cur.kind != "IDENT" or self.cur.text != word:
            got = self.cur.text or "end of input"
            self.fail(f"expected '{word}', found {got!r}")
        return self.advance()

    def at_keyword(self, word: str) -> bool:
        return self.cur.kind == "IDENT" and self.cur.text == word

    def string(self, what: str) -> str:
        tok = self.expect("STRING", what)
        return _unescape(tok.text, tok.span)

    def keyword_choice(self, mapping: dict, what: str):
        if self.cur.kind == "IDENT" and self.cur.text in mapping:
            return mapping[self.advance().text]
        options = "|".join(mapping)
        got = self.cur.text or "end of input"
        self.fail(f"expected {what} ({options}), found {got!r}")

    def duplicate(self, message: str, span: SourceSpan):
        self.deferred.append(Diagnostic("DUP-DECL", message, span))

    # --- grammar productions -------------------------------------------

    def parse_file(self) -> OversightModel:
        model = self.parse_scenario()
        if self.cur.kind != "EOF":
            self.fail(f"trailing input after scenario: {self.cur.text!r}")
        if self.deferred:
            raise ParseError(self.deferred)
        return model

    def parse_scenario(self) -> OversightModel:
        start = self.expect_keyword("scenario")
        name = self.string("scenario name")
        self.expect("LBRACE", "'{'")
        system = self.parse_system()
        roles = [self.parse_role()]
        while self.at_keyword("role"):
            roles.append(self.parse_role())
        seen: dict[str, SourceSpan] = {}
        for decl in roles:
            if decl.ident in seen:
                self.duplicate(f"duplicate role '{decl.ident}'", decl.span)
            seen[decl.ident] = decl.span
        derivation = None
        if self.at_keyword("derivation"):
            derivation = self.parse_derivation()
        end = self.expect("RBRACE", "'}'")
        return OversightModel(
            scenario_name=name,
            system=system,
            roles=tuple(roles),
            derivation=derivation,
            span=_join(start.span, end.span),
        )

    def parse_system(self) -> SystemDecl:
        start = self.expect_keyword("system")
        self.expect("LBRACE", "'{'")
        self.expect_keyword("control")
        self.expect("COLON", "':'")
        control = ControlFrequency(
            self.keyword_choice(LEVEL_KEYWORDS, "control level")
        )
        self.expect_keyword("transparency")
        self.expect("COLON", "':'")
        transparency = TransparencyLevel(
            self.keyword_choice(LEVEL_KEYWORDS, "transparency level")
        )
        extensions = self.parse_extensions("system")
        end = self.expect("RBRACE", "'}'")
        return SystemDecl(
            control=control,
            transparency=transparency,
            extensions=extensions,
            span=_join(start.span, end.span),
        )

    def parse_role(self) -> RoleDecl:
        start = self.expect_keyword("role")
        ident = self.expect("IDENT", "role identifier").text
        display = None
        if self.cur.kind == "STRING":
            display = self.string("role display name")
        self.expect("LBRACE", "'{'")
        self.expect_keyword("authority")
        self.expect("COLON", "':'")
        authority = self.keyword_choice(AUTHORITY_KEYWORDS, "authority level")
        self.expect_keyword("interaction")
        self.expect("COLON", "':'")
        interaction = self.keyword_choice(
            INTERACTION_KEYWORDS, "interaction mode"
        )
        extensions = self.parse_extensions("human")
        end = self.expect("RBRACE", "'}'")
        return RoleDecl(
            ident=ident,
            display_name=display,
            authority=authority,
            interaction=interaction,
            extensions=extensions,
            span=_join(start.span, end.span),
        )

    def parse_extensions(self, side: str) -> tuple[ExtensionFactor, ...]:
        extensions = []
        seen: set[str] = set()
        while self.at_keyword("extension"):
            self.advance()
            key_tok = self.expect("IDENT", "extension key")
            self.expect("EQUALS", "'='")
            if self.cur.kind == "IDENT":
                value = self.advance().text
            elif self.cur.kind == "STRING":
                value = self.string("extension value")
            else:
                self.fail("expected extension value (identifier or string)")
            if key_tok.text in seen:
                self.duplicate(
                    f"duplicate extension '{key_tok.text}'", key_tok.span
                )
            seen.add(key_tok.text)
            extensions.append(ExtensionFactor(key_tok.text, value, side))
        return tuple(extensions)

    def parse_derivation(self) -> DerivationBlock:
        start = self.expect_keyword("derivation")
        self.expect("LBRACE", "'{'")
        goals = []
        while self.at_keyword("goal"):
            goals.append(self.parse_goal())
        obstacles = []
        while self.at_keyword("obstacle"):
            obstacles.append(self.parse_obstacle())
        requirements = []
        while self.at_keyword("requirement"):
            requirements.append(self.parse_requirement())
        end = self.expect("RBRACE", "'}'")
        return DerivationBlock(
            goals=tuple(goals),
            obstacles=tuple(obstacles),
            requirements=tuple(requirements),
            span=_join(start.span, end.span),
        )

    def parse_goal(self) -> Goal:
        start = self.expect_keyword("goal")
        ident = self.expect("GID", "goal ID").text
        text = self.string("goal text")
        mitigates = []
        if self.at_keyword("mitigates"):
            self.advance()
            mitigates.append(self.expect("IDENT", "role identifier").text)
            while self.cur.kind == "COMMA":
                self.advance()
                mitigates.append(self.expect("IDENT", "role identifier").text)
        subgoals = []
        end_span = start.span
        if self.cur.kind == "LBRACE":
            self.advance()
            while self.at_keyword("subgoal"):
                subgoals.append(self.parse_subgoal())
            end_span = self.expect("RBRACE", "'}'").span
        return Goal(
            ident=ident,
            text=text,
            mitigates=tuple(mitigates),
            subgoals=tuple(subgoals),
            span=_join(start.span, end_span),
        )

    def parse_subgoal(self) -> Subgoal:
        start = self.expect_keyword("subgoal")
        ident = self.expect("GID", "subgoal ID").text
        agent = None
        if self.at_keyword("for"):
            self.advance()
            agent = self.expect("IDENT", "agent (role or 'system')").text
        text = self.string("subgoal text")
        return Subgoal(ident=ident, agent=agent, text=text, span=start.span)

    def parse_obstacle(self) -> Obstacle:
        start = self.expect_keyword("obstacle")
        ident = self.expect("OID", "obstacle ID").text
        self.expect_keyword("blocks")
        blocks = self.expect("GID", "goal or subgoal ID").text
        text = self.string("obstacle text")
        return Obstacle(ident=ident, blocks=blocks, text=text, span=start.span)

    def parse_requirement(self) -> Requirement:
        start = self.expect_keyword("requirement")
        ident = self.expect("RID", "requirement ID").text
        if self.at_keyword("system"):
            self.advance()
            side, role = "system", None
        elif self.at_keyword("human"):
            self.advance()
            self.expect("LPAREN", "'('")
            role = self.expect("IDENT", "role identifier").text
            self.expect("RPAREN", "')'")
            side = "human"
        else:
            self.fail("expected 'system' or 'human(<role>)'")
        self.expect_keyword("addresses")
        addresses = self.expect("OID", "obstacle ID").text
        text = self.string("requirement text")
        return Requirement(
            ident=ident,
            side=side,
            role=role,
            addresses=addresses,
            text=text,
            span=start.span,
        )


def _join(a: SourceSpan, b: SourceSpan) -> SourceSpan:
    return SourceSpan(a.line, a.column, b.end_line, b.end_column)


def parse(source_text: str) -> OversightModel:
    """Parse `.homl` source into a model; raises ParseError on failure."""
    return _Parser(tokenize(source_text)).parse_file()
