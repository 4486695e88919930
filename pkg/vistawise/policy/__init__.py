"""Decision providers: the scripted rule chain and the remote endpoint
client."""

from .base import PolicyRequest,PolicyResponse,DecisionProvider
from .scripted import ScriptedPolicy,scripted_decide
from .remote import (EndpointConfig,RemotePolicy,load_endpoint,remote_decide,
                     extract)
