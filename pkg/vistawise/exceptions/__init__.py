from .exceptions import (VistaException,VistaGraphError,VistaPerceptionError,
                         VistaRetrievalError,VistaMemoryError,VistaSkillError,
                         VistaActionError,VistaBackendError,VistaConfigError,
                         VistaTransportError,VistaTimeout,VistaResponseError,
                         VistaFallbackExhausted)
