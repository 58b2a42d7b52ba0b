"""Chain-of-thought baseline prompt templates.

The templates walk a model through the labelling algorithms step by step;
the placeholders {PROGRAM}, {EXAMPLE}, and {GRD_LABELLING} are substituted
with the serialized framework and, for the complete task, the true grounded
labelling. No model is ever invoked here.
"""

from __future__ import annotations

from .core import Framework
from .graphio import GraphFormat, serialize_answer, serialize_framework
from .semantics import solve_grounded

GROUNDED_PROMPT_TEMPLATE = """\
You will compute the grounded labelling of an abstract argumentation
framework. Arguments are nodes of a directed graph; an edge from a to b
means a attacks b. Every argument must end up labelled IN, OUT, or UNDEC.

Follow this procedure step by step and show your work:

{PROGRAM}

Procedure:
1. List the arguments and the attack relation of the framework.
2. Find all arguments that are not attacked and label them IN.
3. Repeat the recursive part of the algorithm until nothing changes:
   a. Label OUT every argument attacked by an argument labelled IN.
   b. Label IN every argument all of whose attackers are labelled OUT.
4. When no more arguments can be added to IN or OUT, label every remaining
   argument UNDEC.
5. Output the final labelling as a JSON object with the keys "IN", "OUT",
   and "UNDEC", each a list of argument numbers sorted in ascending order.

Framework:

{EXAMPLE}
"""

COMPLETE_PROMPT_TEMPLATE = """\
You will compute all complete labellings of an abstract argumentation
framework, starting from its grounded labelling. Arguments are nodes of a
directed graph; an edge from a to b means a attacks b.

{PROGRAM}

The grounded labelling of the framework is:

{GRD_LABELLING}

Procedure:
1. Every complete labelling keeps the IN and OUT arguments of the grounded
   labelling. Select elements from its UNDEC set and reassign them to IN
   or OUT to propose a candidate labelling.
2. Verify the candidate: every IN argument must have all attackers OUT,
   every OUT argument must have at least one IN attacker, and every UNDEC
   argument must have no IN attacker and not all attackers OUT. Discard
   candidates that fail.
3. Repeat until every complete labelling has been found. The grounded
   labelling itself is always one of them.
4. Output all complete labellings as a JSON array of objects, each with
   the keys "IN", "OUT", and "UNDEC" holding ascending lists of argument
   numbers.

Framework:

{EXAMPLE}
"""


def render_grounded_prompt(f: Framework, fmt: GraphFormat) -> str:
    text = serialize_framework(f, fmt)
    return (GROUNDED_PROMPT_TEMPLATE
            .replace("{PROGRAM}",
                     "The framework below is given in the "
                     f"{GraphFormat(fmt).value} graph description language.")
            .replace("{EXAMPLE}", text))


def render_complete_prompt(f: Framework, fmt: GraphFormat) -> str:
    grounded, _ = solve_grounded(f)
    text = serialize_framework(f, fmt)
    return (COMPLETE_PROMPT_TEMPLATE
            .replace("{PROGRAM}",
                     "The framework below is given in the "
                     f"{GraphFormat(fmt).value} graph description language.")
            .replace("{GRD_LABELLING}", serialize_answer([grounded]))
            .replace("{EXAMPLE}", text))
