from vistawise.shared import ExitCodes

class VistaException(Exception):
    """This class is the parent class of all exceptions raised by the agent
    pipeline, the simulator and the harness."""

    exit_code = None

    def __init__(self, message, *args, exit_code=None, **kwargs):
        if isinstance(exit_code, int):
            self.exit_code = exit_code

        super().__init__(message, *args, **kwargs)

class VistaGraphError(VistaException):
    """A graph-definition document could not be loaded."""

    exit_code = ExitCodes.CONFIG_ERROR

    def __init__(self, message, *args, line=None, **kwargs):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message, *args, **kwargs)

class VistaPerceptionError(VistaException):
    """A detection record violates the record invariants."""

    def __init__(self, message, *args, index=None, **kwargs):
        self.index = index
        super().__init__(message, *args, **kwargs)

class VistaRetrievalError(VistaException):
    pass

class VistaMemoryError(VistaException):
    pass

class VistaSkillError(VistaException):
    """Misuse of the skill registry."""
    pass

class VistaActionError(VistaException):
    """Policy output that does not parse into a valid action. The reason
    attribute is one of: no_marker, unknown_skill, arity, hotbar_range,
    out_of_range, malformed."""

    def __init__(self, message, *args, reason=None, **kwargs):
        self.reason = reason
        super().__init__(message, *args, **kwargs)

class VistaBackendError(VistaException):
    pass

class VistaConfigError(VistaException):
    exit_code = ExitCodes.CONFIG_ERROR

class VistaTransportError(VistaException):
    """The decision provider could not be reached or answered badly."""
    exit_code = ExitCodes.POLICY_TRANSPORT

class VistaTimeout(VistaTransportError):
    """This class represents a timeout error waiting for a response from the
    policy endpoint."""
    pass

class VistaResponseError(VistaTransportError):
    """The endpoint answered with a body we can not read."""
    pass

class VistaFallbackExhausted(VistaException):
    """Neither the policy nor the fallback action produced an executable
    action."""
    pass
