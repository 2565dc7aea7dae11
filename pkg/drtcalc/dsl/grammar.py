from functools import lru_cache

from lark import Lark

# Precedence: "." binds tighter than the merges, which bind tighter than "+".
# "." and the merges associate to the right; "+" to the left.
GRAMMAR = r"""
    start:            _statement*
    _statement:       actions_decl | comm_decl | handshaking_decl | proc_decl | spec_decl | check_decl

    actions_decl:     "actions" NAME ("," NAME)* ";"
    comm_decl:        "comm" comm_entry ("," comm_entry)* ";"
    comm_entry:       NAME "|" NAME "=" NAME
    handshaking_decl: "handshaking" ";"
    proc_decl:        "proc" NAME "=" term ";"
    spec_decl:        "spec" NAME "{" equation* "}"
    equation:         NAME "=" term ";"
    check_decl:       "check" relation term "~" term expect? ";"
    relation:         NAME ("-" NAME)*
    expect:           "expect" verdict
    !verdict:         "yes" | "no"

    ?term:            alt
    ?alt:             merge
                    | alt "+" merge                      -> alt
    ?merge:           seq
                    | seq "||" merge                     -> par
                    | seq "|_" merge                     -> left_merge
                    | seq "|" merge                      -> comm_merge
    ?seq:             atom
                    | atom "." seq                       -> seq
    ?atom:            "u" "(" NAME ")"                     -> undelayable
                    | "u" "(" "tau" ")"                  -> tau
                    | "u" "(" "delta" ")"                -> delta
                    | "tau"                              -> tau
                    | "delta"                            -> delta
                    | NAME                               -> name
                    | "sigma" "(" term ")"               -> delay
                    | "sigma" "^" INT "(" term ")"       -> delay_n
                    | "sigma" "*" INT "(" term ")"       -> time_iter
                    | "encap" "(" action_set "," term ")" -> encap
                    | "hide" "(" action_set "," term ")"  -> hide
                    | "to" "(" term ")"                  -> timeout
                    | "tf" "(" term ")"                  -> time_free
                    | "shift" "(" term ")"               -> shift
                    | "<" NAME "|" equation+ ">"         -> rec
                    | "<" NAME "|" NAME ">"              -> spec_ref
                    | "(" term ")"
    action_set:       "{" (NAME ("," NAME)*)? "}"

    COMMENT:          /#[^\n]*/
    %import common.CNAME -> NAME
    %import common.INT
    %import common.WS
    %ignore WS
    %ignore COMMENT
"""


@lru_cache(maxsize=1)
def get_parser() -> Lark:
    return Lark(GRAMMAR, parser="lalr", propagate_positions=True)
