"""
Grammar of .tdc documents.

    complex THETA {
        vertex v1 genus 0;
        edge e1 v1 v2 length 1;
        edge e4 v1 w length 1/2 node w at 1/4;
    }
    point m1 = e1(1/2);
    divisor D { 2 at m1; -1 at w[1/8]; }
"""

GRAMMAR = r"""
start: block*

?block: complex_block
      | divisor_block
      | point_alias

complex_block: COMPLEX NAME "{" complex_item* "}"

?complex_item: vertex_decl
             | edge_decl

vertex_decl: "vertex" NAME "genus" NUMBER ";"
edge_decl: "edge" NAME NAME NAME "length" NUMBER node_clause* ";"
node_clause: "node" NAME "at" NUMBER

point_alias: "point" NAME "=" location ";"

divisor_block: DIVISOR NAME "{" term* "}"
term: NUMBER "at" location ";"

location: NAME                      -> named_location
        | NAME "(" NUMBER ")"       -> edge_location
        | NAME "[" NUMBER "]"       -> component_location

COMPLEX: "complex"
DIVISOR: "divisor"
NUMBER: /-?[0-9]+(\/[0-9]+)?/
NAME: /[A-Za-z_][A-Za-z0-9_.@\/']*/
COMMENT: /#[^\n]*/

%import common.WS
%ignore WS
%ignore COMMENT
"""
