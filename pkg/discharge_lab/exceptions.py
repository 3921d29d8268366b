class DischargeLabError(Exception):
    pass


# Embedding construction

class NonSimple(DischargeLabError):
    def __init__(self, vertex, neighbor):
        self.vertex = vertex
        self.neighbor = neighbor
        if vertex == neighbor:
            message = "loop at vertex {}".format(vertex)
        else:
            message = "parallel edge {}-{}".format(vertex, neighbor)
        super().__init__(message)


class Disconnected(DischargeLabError):
    def __init__(self, components):
        self.components = components
        super().__init__("graph has {} connected components".format(components))


class NotSphereEmbedding(DischargeLabError):
    def __init__(self, vertices, edges, faces):
        self.vertices = vertices
        self.edges = edges
        self.faces = faces
        super().__init__(
            "V - E + F = {} - {} + {} != 2".format(vertices, edges, faces)
        )


class InconsistentRotation(DischargeLabError):
    def __init__(self, vertex, neighbor):
        self.vertex = vertex
        self.neighbor = neighbor
        super().__init__(
            "edge {}-{} is missing from the rotation at {}".format(vertex, neighbor, neighbor)
        )


class UnknownVertex(DischargeLabError):
    def __init__(self, vertex):
        self.vertex = vertex
        super().__init__("unknown vertex {!r}".format(vertex))


class NoSuchFace(DischargeLabError):
    def __init__(self, vertices):
        self.vertices = tuple(vertices)
        super().__init__("no face is bounded by {}".format(self.vertices))


class NotATriangle(DischargeLabError):
    def __init__(self, vertices):
        self.vertices = tuple(vertices)
        super().__init__("outer face must be given by three vertices, got {}".format(self.vertices))


class MissingOuterFace(DischargeLabError):
    def __init__(self, operation=None):
        self.operation = operation
        message = "outer triangle is not designated"
        if operation:
            message = "{}: {}".format(operation, message)
        super().__init__(message)


class PlgSyntaxError(DischargeLabError):
    def __init__(self, lineno, reason):
        self.lineno = lineno
        self.reason = reason
        super().__init__("line {}: {}".format(lineno, reason))


# Search limits

class LimitExceeded(DischargeLabError):
    def __init__(self, what, cap):
        self.what = what
        self.cap = cap
        super().__init__("{} cap of {} exceeded".format(what, cap))


class SearchBudgetExceeded(DischargeLabError):
    def __init__(self, nodes, cap):
        self.nodes = nodes
        self.cap = cap
        super().__init__("search stopped after {} nodes (cap {})".format(nodes, cap))


# Configurations

class BadParameters(DischargeLabError):
    def __init__(self, kind, parameters, reason):
        self.kind = kind
        self.parameters = parameters
        self.reason = reason
        super().__init__("{}{}: {}".format(kind, tuple(parameters), reason))


# Discharging

class ChargeSumMismatch(DischargeLabError):
    def __init__(self, total, stage):
        self.total = total
        self.stage = stage
        super().__init__("charge sum is {} after {}, expected -12".format(total, stage))


class AmbiguousRule(DischargeLabError):
    def __init__(self, rule, source, sink, clauses):
        self.rule = rule
        self.source = source
        self.sink = sink
        self.clauses = tuple(clauses)
        super().__init__(
            "{}: {} -> {} matches several clauses: {}".format(
                rule, source, sink, ", ".join(self.clauses)
            )
        )


class OverlappingCluster(DischargeLabError):
    def __init__(self, face, clusters):
        self.face = face
        self.clusters = tuple(clusters)
        super().__init__(
            "3-face f{} belongs to clusters {}".format(face, ", ".join(self.clusters))
        )


class UnclassifiableElement(DischargeLabError):
    def __init__(self, element, reason):
        self.element = element
        self.reason = reason
        super().__init__("{}: {}".format(element, reason))


# List colouring

class PinConflict(DischargeLabError):
    def __init__(self, vertex, color, reason):
        self.vertex = vertex
        self.color = color
        self.reason = reason
        super().__init__("pin {}={}: {}".format(vertex, color, reason))


class MalformedCertificate(DischargeLabError):
    def __init__(self, reason):
        self.reason = reason
        super().__init__(reason)


# Corpus and campaigns

class BadSpec(DischargeLabError):
    def __init__(self, reason):
        self.reason = reason
        super().__init__(reason)


class UnknownLemma(DischargeLabError):
    def __init__(self, name, known):
        self.name = name
        self.known = tuple(known)
        super().__init__(
            "unknown lemma {!r}; expected one of {}".format(name, ", ".join(self.known))
        )
