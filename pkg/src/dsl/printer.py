"""
Text output for documents: .tdc source and a DOT view of the skeleton.
"""

from typing import List

from src.dsl.parser import ComplexDocument
from src.model.complex import MetrizedComplex
from src.model.points import format_rational


def print_complex(complex_: MetrizedComplex) -> List[str]:
    lines = [f"complex {complex_.name} {{"]
    for vertex in complex_.vertices:
        lines.append(f"    vertex {vertex.id} genus {vertex.genus};")
    for edge in complex_.edges:
        clauses = ""
        if edge.tail_node is not None:
            clauses += f" node {edge.tail} at {format_rational(edge.tail_node)}"
        if edge.head_node is not None:
            clauses += f" node {edge.head} at {format_rational(edge.head_node)}"
        lines.append(f"    edge {edge.id} {edge.tail} {edge.head} length {format_rational(edge.length)}{clauses};")
    lines.append("}")
    return lines


def print_document(document: ComplexDocument) -> str:
    """Source text that parses back to an equal document."""
    lines = print_complex(document.complex)
    for name, point in document.points.items():
        lines.append(f"point {name} = {point};")
    for name, divisor in document.divisors.items():
        lines.append(f"divisor {name} {{")
        for point, coefficient in divisor.items():
            lines.append(f"    {coefficient} at {point};")
        lines.append("}")
    return "\n".join(lines) + "\n"


def to_dot(complex_: MetrizedComplex) -> str:
    lines = [f'graph "{complex_.name}" {{']
    for vertex in complex_.vertices:
        shape = "doublecircle" if vertex.genus else "circle"
        lines.append(f'    "{vertex.id}" [shape={shape}, label="{vertex.id}\\ng={vertex.genus}"];')
    for edge in complex_.edges:
        label = f"{edge.id}: {format_rational(edge.length)}"
        lines.append(f'    "{edge.tail}" -- "{edge.head}" [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
