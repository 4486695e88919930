from .stack import DecisionRecord,MemoryStack,push,recall,depth
